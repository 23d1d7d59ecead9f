// Copyright 2026 The unraw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "unraw/unraw.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <sstream>
#include <string>

#include "json_io.hpp"
#include "unraw/container.hpp"
#include "unraw/error.hpp"
#include "unraw/forward_pipeline.hpp"
#include "unraw/image_io.hpp"
#include "unraw/metrics.hpp"
#include "unraw/noise_model.hpp"
#include "unraw/profile.hpp"
#include "unraw/synthesis.hpp"
#include "unraw/unprocess.hpp"

struct unraw_profile {
  unraw::CameraProfile profile;
};

struct unraw_image {
  unraw::PlanarImage image;
};

struct unraw_raw {
  unraw::BayerImage bayer;
  unraw::PipelineParams params;
  // Provenance carried alongside the params in the sidecar.
  nlohmann::json extra = nlohmann::json::object();
};

struct unraw_histogram {
  unraw::HistogramAccumulator accumulator;
};

namespace {

using unraw::ErrorCode;
using Json = nlohmann::json;

thread_local std::string g_last_error;

unraw_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kArgument:
      return UNRAW_ERR_ARGUMENT;
    case ErrorCode::kDimension:
      return UNRAW_ERR_DIMENSION;
    case ErrorCode::kDomain:
      return UNRAW_ERR_DOMAIN;
    case ErrorCode::kConfig:
      return UNRAW_ERR_CONFIG;
    case ErrorCode::kIo:
      return UNRAW_ERR_IO;
    case ErrorCode::kFormat:
      return UNRAW_ERR_FORMAT;
  }
  return UNRAW_ERR_INTERNAL;
}

template <typename Fn>
unraw_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return UNRAW_OK;
  } catch (const unraw::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return UNRAW_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return UNRAW_ERR_INTERNAL;
  }
}

void require(const void* ptr, const char* what) {
  if (ptr == nullptr) {
    throw unraw::Error(ErrorCode::kArgument, std::string(what) + " must not be NULL");
  }
}

char* dup_string(const std::string& s) {
  auto* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

unraw::Rng keyed_rng(std::uint64_t seed, const char* key) {
  return unraw::example_rng(seed, key ? key : "");
}

Json raw_sidecar(const unraw_raw& raw) {
  Json j = raw.extra;
  j["kind"] = "bayer";
  j["blocks"] = Json::array({"raw"});
  j["params"] = unraw::detail::to_json(raw.params);
  return j;
}

}  // namespace

extern "C" {

const char* unraw_version(void) { return "1.0.0"; }

const char* unraw_status_name(unraw_status status) {
  switch (status) {
    case UNRAW_OK:
      return "ok";
    case UNRAW_ERR_ARGUMENT:
      return "argument";
    case UNRAW_ERR_DIMENSION:
      return "dimension";
    case UNRAW_ERR_DOMAIN:
      return "domain";
    case UNRAW_ERR_CONFIG:
      return "config";
    case UNRAW_ERR_IO:
      return "io";
    case UNRAW_ERR_FORMAT:
      return "format";
    case UNRAW_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* unraw_last_error(void) { return g_last_error.c_str(); }

void unraw_string_free(char* text) { delete[] text; }

uint64_t unraw_entropy_seed(void) { return unraw::entropy_seed(); }

unraw_status unraw_profile_default(unraw_profile** out) {
  return guarded([&] {
    require(out, "out");
    *out = new unraw_profile{unraw::default_profile()};
  });
}

unraw_status unraw_profile_resolve(const char* name_or_path, unraw_profile** out) {
  return guarded([&] {
    require(out, "out");
    *out = new unraw_profile{unraw::resolve_profile(name_or_path ? name_or_path : "default")};
  });
}

unraw_status unraw_profile_parse(const char* json, unraw_profile** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new unraw_profile{unraw::profile_from_json(json)};
  });
}

unraw_status unraw_profile_to_json(const unraw_profile* profile, char** out) {
  return guarded([&] {
    require(profile, "profile");
    require(out, "out");
    *out = dup_string(unraw::profile_to_json(profile->profile));
  });
}

unraw_status unraw_profile_hash(const unraw_profile* profile, char** out) {
  return guarded([&] {
    require(profile, "profile");
    require(out, "out");
    *out = dup_string(unraw::config_hash(profile->profile));
  });
}

void unraw_profile_free(unraw_profile* profile) { delete profile; }

unraw_status unraw_image_create(int channels, int height, int width, const float* samples,
                                unraw_image** out) {
  return guarded([&] {
    require(samples, "samples");
    require(out, "out");
    if (channels <= 0 || height <= 0 || width <= 0) {
      throw unraw::Error(ErrorCode::kDimension, "image dimensions must be positive");
    }
    const std::size_t n = static_cast<std::size_t>(channels) * height * width;
    std::vector<float> data(samples, samples + n);
    unraw::require_finite(data, "image");
    *out = new unraw_image{unraw::PlanarImage(channels, height, width, std::move(data),
                                              unraw::ColorSpace::kGammaSrgb)};
  });
}

unraw_status unraw_image_load(const char* path, unraw_image** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new unraw_image{unraw::read_image(path)};
  });
}

unraw_status unraw_image_save(const unraw_image* image, const char* path, int bits) {
  return guarded([&] {
    require(image, "image");
    require(path, "path");
    unraw::write_image(path, image->image, bits);
  });
}

unraw_status unraw_image_shape(const unraw_image* image, int* channels, int* height, int* width) {
  return guarded([&] {
    require(image, "image");
    if (channels) *channels = image->image.channels();
    if (height) *height = image->image.height();
    if (width) *width = image->image.width();
  });
}

const float* unraw_image_samples(const unraw_image* image) {
  return image ? image->image.samples().data() : nullptr;
}

void unraw_image_free(unraw_image* image) { delete image; }

unraw_status unraw_unprocess(const unraw_image* srgb, const unraw_profile* profile,
                             uint64_t seed, const char* key, unsigned flags, unraw_raw** out) {
  return guarded([&] {
    require(srgb, "srgb");
    require(profile, "profile");
    require(out, "out");
    const auto& prof = profile->profile;
    const unraw::Rng base = keyed_rng(seed, key);
    unraw::Rng unprocess_rng = base.substream("unprocess");
    auto result = unraw::unprocess(srgb->image, prof.unprocess, unprocess_rng);
    auto raw = std::make_unique<unraw_raw>();
    raw->bayer = unraw::mosaic(result.raw_rgb, result.params.bayer_pattern);
    raw->params = result.params;
    raw->extra["seed"] = seed;
    raw->extra["source_id"] = key ? key : "";
    raw->extra["config_hash"] = unraw::config_hash(prof);
    raw->extra["ccm_weights"] = result.ccm_weights;
    if (flags & UNRAW_UNPROCESS_ADD_NOISE) {
      unraw::Rng noise_rng = base.substream("noise-params");
      const auto noise = unraw::sample_noise_params(prof.noise, noise_rng);
      raw->bayer = unraw::apply_shot_read_noise(raw->bayer, noise, base.substream("noise-field"));
      raw->extra["noise"] = unraw::detail::to_json(noise);
    }
    *out = raw.release();
  });
}

unraw_status unraw_unprocess_rgb(const unraw_image* srgb, const unraw_profile* profile,
                                 uint64_t seed, const char* key, unraw_image** out) {
  return guarded([&] {
    require(srgb, "srgb");
    require(profile, "profile");
    require(out, "out");
    unraw::Rng rng = keyed_rng(seed, key).substream("unprocess");
    auto result = unraw::unprocess(srgb->image, profile->profile.unprocess, rng);
    *out = new unraw_image{std::move(result.raw_rgb)};
  });
}

unraw_status unraw_raw_save(const unraw_raw* raw, const char* path) {
  return guarded([&] {
    require(raw, "raw");
    require(path, "path");
    unraw::Container c;
    c.height = static_cast<std::uint32_t>(raw->bayer.height());
    c.width = static_cast<std::uint32_t>(raw->bayer.width());
    c.channels = 1;
    c.blocks.emplace_back(raw->bayer.samples().begin(), raw->bayer.samples().end());
    c.sidecar = raw_sidecar(*raw).dump(2);
    unraw::write_container(path, c);
  });
}

unraw_status unraw_raw_load(const char* path, const char* block, unraw_raw** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    const unraw::Container c = unraw::read_container(path);
    if (c.sidecar.empty()) {
      throw unraw::Error(ErrorCode::kFormat, std::string(path) + ": container has no sidecar");
    }
    const Json j = unraw::detail::parse_json(c.sidecar, std::string(path) + " sidecar");
    auto raw = std::make_unique<unraw_raw>();
    const std::string kind = j.is_object() ? j.value("kind", "") : "";
    if (kind == "bayer") {
      if (c.channels != 1 || c.blocks.size() != 1 || !j.contains("params")) {
        throw unraw::Error(ErrorCode::kFormat, std::string(path) + ": malformed mosaic container");
      }
      raw->params = unraw::detail::pipeline_params_from_json(j["params"]);
      raw->bayer = unraw::BayerImage(raw->params.bayer_pattern, static_cast<int>(c.height),
                                     static_cast<int>(c.width), c.blocks[0]);
      for (const auto& item : j.items()) {
        if (item.key() != "kind" && item.key() != "blocks" && item.key() != "params") {
          raw->extra[item.key()] = item.value();
        }
      }
    } else if (kind == "training_example") {
      const auto ex = unraw::decode_example(c);
      const std::string which = block ? block : "clean";
      const unraw::PlanarImage* planes = nullptr;
      if (which == "clean") planes = &ex.clean_planes;
      if (which == "noisy") planes = &ex.noisy_planes;
      if (!planes) {
        throw unraw::Error(ErrorCode::kArgument, "block must be \"clean\" or \"noisy\"");
      }
      raw->params = ex.params;
      raw->bayer = unraw::unpack_bayer_planes(*planes, ex.params.bayer_pattern);
      raw->extra["source_id"] = ex.source_id;
      raw->extra["seed"] = ex.seed;
      raw->extra["noise"] = unraw::detail::to_json(ex.noise);
      raw->extra["block"] = which;
    } else {
      throw unraw::Error(ErrorCode::kFormat, std::string(path) + ": unknown container kind");
    }
    *out = raw.release();
  });
}

unraw_status unraw_raw_shape(const unraw_raw* raw, int* height, int* width) {
  return guarded([&] {
    require(raw, "raw");
    if (height) *height = raw->bayer.height();
    if (width) *width = raw->bayer.width();
  });
}

const float* unraw_raw_samples(const unraw_raw* raw) {
  return raw ? raw->bayer.samples().data() : nullptr;
}

unraw_status unraw_raw_sidecar(const unraw_raw* raw, char** out) {
  return guarded([&] {
    require(raw, "raw");
    require(out, "out");
    *out = dup_string(raw_sidecar(*raw).dump(2));
  });
}

void unraw_raw_free(unraw_raw* raw) { delete raw; }

unraw_status unraw_process(const unraw_raw* raw, unsigned flags, unraw_image** out) {
  return guarded([&] {
    require(raw, "raw");
    require(out, "out");
    unraw::PipelineParams params = raw->params;
    params.tone_map_enabled = (flags & UNRAW_PROCESS_TONE_MAP) != 0;
    unraw::ProcessOptions options;
    options.apply_digital_gain = (flags & UNRAW_PROCESS_DIGITAL_GAIN) != 0;
    options.clamp_output = (flags & UNRAW_PROCESS_UNCLAMPED) == 0;
    *out = new unraw_image{unraw::process_raw_to_srgb(raw->bayer, params, options)};
  });
}

void unraw_synthesis_options_default(unraw_synthesis_options* options) {
  if (!options) return;
  const unraw::SynthesisConfig cfg;
  options->crop_size = cfg.crop_size;
  options->downsample = cfg.downsample;
  options->allow_flips = cfg.allow_flips;
  options->add_noise = cfg.add_noise;
  options->clip_noisy = cfg.clip_noisy;
  options->jobs = 1;
}

unraw_status unraw_synthesize_corpus(const char* source_dir, const unraw_profile* profile,
                                     const unraw_synthesis_options* options, uint64_t seed,
                                     const char* out_dir, unraw_corpus_result* result,
                                     char** failures_out) {
  return guarded([&] {
    require(source_dir, "source_dir");
    require(profile, "profile");
    require(out_dir, "out_dir");
    unraw_synthesis_options opts;
    unraw_synthesis_options_default(&opts);
    if (options) opts = *options;
    unraw::SynthesisConfig cfg;
    cfg.crop_size = opts.crop_size;
    cfg.downsample = opts.downsample != 0;
    cfg.allow_flips = opts.allow_flips != 0;
    cfg.add_noise = opts.add_noise != 0;
    cfg.clip_noisy = opts.clip_noisy != 0;
    unraw::CorpusOptions corpus;
    corpus.jobs = opts.jobs;
    const auto summary =
        unraw::synthesize_corpus(source_dir, profile->profile, cfg, seed, out_dir, corpus);
    if (result) {
      result->examples = summary.records.size();
      result->train = summary.train;
      result->validation = summary.validation;
      result->test = summary.test;
      result->failures = summary.failures.size();
    }
    if (failures_out) {
      std::string text;
      for (const auto& f : summary.failures) text += f.source_id + "\t" + f.reason + "\n";
      *failures_out = dup_string(text);
    }
  });
}

unraw_status unraw_example_verify(const char* path, int* matches) {
  return guarded([&] {
    require(path, "path");
    require(matches, "matches");
    const auto ex = unraw::decode_example(unraw::read_container(path));
    *matches = unraw::noise_stddev_map(ex.noisy_planes, ex.noise) == ex.noise_map ? 1 : 0;
  });
}

unraw_status unraw_container_sidecar(const char* path, char** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = dup_string(unraw::read_container(path).sidecar);
  });
}

unraw_status unraw_sample_params_csv(const unraw_profile* profile, uint64_t count, uint64_t seed,
                                     char** out) {
  return guarded([&] {
    require(profile, "profile");
    require(out, "out");
    const auto& prof = profile->profile;
    prof.validate();
    std::ostringstream os;
    os.precision(17);
    os << "index,lambda_shot,lambda_read,red_gain,green_gain,blue_gain,inverse_digital_gain";
    for (const auto& m : prof.unprocess.ccm_set.matrices) os << ",ccm_weight_" << m.name;
    os << '\n';
    const unraw::Rng root(seed);
    for (std::uint64_t i = 0; i < count; ++i) {
      const unraw::Rng base = root.substream(i);
      unraw::Rng unprocess_rng = base.substream("unprocess");
      unraw::Rng noise_rng = base.substream("noise-params");
      const auto ccm = unraw::sample_ccm(prof.unprocess.ccm_set, unprocess_rng);
      const auto wb = unraw::sample_wb_gains(prof.unprocess, unprocess_rng);
      const double dg = unraw::sample_inverse_digital_gain(prof.unprocess, unprocess_rng);
      const auto noise = unraw::sample_noise_params(prof.noise, noise_rng);
      os << i << ',' << noise.lambda_shot << ',' << noise.lambda_read << ',' << wb[0] << ','
         << wb[1] << ',' << wb[2] << ',' << dg;
      for (double w : ccm.weights) os << ',' << w;
      os << '\n';
    }
    *out = dup_string(os.str());
  });
}

unraw_status unraw_image_compare(const unraw_image* a, const unraw_image* b, double* psnr,
                                 double* ssim) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    if (psnr) *psnr = unraw::psnr(a->image, b->image);
    if (ssim) *ssim = unraw::ssim(a->image, b->image);
  });
}

unraw_status unraw_raw_compare(const unraw_raw* estimate, const unraw_raw* reference,
                               unraw_metric_report* report) {
  return guarded([&] {
    require(estimate, "estimate");
    require(reference, "reference");
    require(report, "report");
    const auto r = unraw::evaluate_raw_pair(estimate->bayer, reference->bayer, reference->params);
    *report = {r.psnr_raw, r.ssim_raw, r.psnr_srgb, r.ssim_srgb};
  });
}

unraw_status unraw_report_format(const unraw_metric_report* report, int as_json, char** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    const unraw::MetricReport r{report->psnr_raw, report->ssim_raw, report->psnr_srgb,
                                report->ssim_srgb};
    *out = dup_string(as_json ? unraw::report_to_json(r) + "\n" : unraw::report_to_text(r));
  });
}

unraw_status unraw_srgb_l1_loss(const unraw_raw* a, const unraw_raw* b, double* loss) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(loss, "loss");
    *loss = unraw::srgb_l1_loss(a->bayer, b->bayer, b->params);
  });
}

double unraw_dssim(double ssim) { return unraw::dssim(ssim); }

double unraw_psnr_to_rmse_reduction(double psnr_ref, double psnr_best) {
  return unraw::psnr_to_relative_rmse_reduction(psnr_ref, psnr_best);
}

unraw_status unraw_dssim_reduction(double ssim_ref, double ssim_best, double* reduction) {
  return guarded([&] {
    require(reduction, "reduction");
    const auto r = unraw::dssim_relative_reduction(ssim_ref, ssim_best);
    if (!r) {
      throw unraw::Error(ErrorCode::kDomain, "reference DSSIM is zero; reduction is undefined");
    }
    *reduction = *r;
  });
}

unraw_status unraw_histogram_create(int channels, int bins, unraw_histogram** out) {
  return guarded([&] {
    require(out, "out");
    *out = new unraw_histogram{unraw::HistogramAccumulator(channels, bins)};
  });
}

unraw_status unraw_histogram_add(unraw_histogram* histogram, const unraw_image* image) {
  return guarded([&] {
    require(histogram, "histogram");
    require(image, "image");
    histogram->accumulator.add(image->image);
  });
}

unraw_status unraw_histogram_csv(const unraw_histogram* histogram, char** counts_csv,
                                 char** summary_csv) {
  return guarded([&] {
    require(histogram, "histogram");
    std::string counts = counts_csv ? histogram->accumulator.to_csv() : std::string();
    std::string summary = summary_csv ? histogram->accumulator.summary_csv() : std::string();
    if (counts_csv) *counts_csv = dup_string(counts);
    if (summary_csv) *summary_csv = dup_string(summary);
  });
}

void unraw_histogram_free(unraw_histogram* histogram) { delete histogram; }

double unraw_gamma_compress(double x, double epsilon) {
  return unraw::gamma_compress(x, epsilon);
}

double unraw_gamma_decompress(double y, double epsilon) {
  return unraw::gamma_decompress(y, epsilon);
}

double unraw_smoothstep(double x) { return unraw::smoothstep(x); }

double unraw_inverse_smoothstep(double y) { return unraw::inverse_smoothstep(y); }

double unraw_safe_inverse_gain(double x, double gain, double threshold) {
  if (!(gain > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return unraw::safe_inverse_gain(x, gain, threshold);
}

}  // extern "C"
