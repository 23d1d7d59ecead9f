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

#include "unraw/synthesis.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "json_io.hpp"
#include "unraw/error.hpp"
#include "unraw/image_io.hpp"

namespace unraw {

using detail::Json;

PlanarImage pack_bayer_planes(const BayerImage& bayer) {
  const int h = bayer.height() / 2;
  const int w = bayer.width() / 2;
  PlanarImage out(4, h, w, ColorSpace::kLinearRawRgb);
  for (int k = 0; k < 4; ++k) {
    const int dy = k >> 1;
    const int dx = k & 1;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) out.at(k, y, x) = bayer.at(2 * y + dy, 2 * x + dx);
    }
  }
  return out;
}

BayerImage unpack_bayer_planes(const PlanarImage& planes, BayerPattern pattern) {
  if (planes.channels() != 4) {
    throw Error(ErrorCode::kDimension, "Bayer planes need 4 channels");
  }
  BayerImage out(pattern, 2 * planes.height(), 2 * planes.width());
  for (int k = 0; k < 4; ++k) {
    const int dy = k >> 1;
    const int dx = k & 1;
    for (int y = 0; y < planes.height(); ++y) {
      for (int x = 0; x < planes.width(); ++x) out.at(2 * y + dy, 2 * x + dx) = planes.at(k, y, x);
    }
  }
  return out;
}

namespace {

Json to_json(const SynthesisConfig& cfg) {
  return Json{{"crop_size", cfg.crop_size},   {"downsample", cfg.downsample},
              {"allow_flips", cfg.allow_flips}, {"add_noise", cfg.add_noise},
              {"clip_noisy", cfg.clip_noisy}};
}

void validate(const SynthesisConfig& cfg) {
  if (cfg.crop_size <= 0 || cfg.crop_size % 2 != 0) {
    throw Error(ErrorCode::kConfig, "crop size must be positive and even");
  }
}

}  // namespace

std::string synthesis_config_hash(const CameraProfile& profile, const SynthesisConfig& cfg) {
  return hex64(fnv1a64(profile_to_json(profile) + to_json(cfg).dump()));
}

int minimum_source_size(const SynthesisConfig& cfg) noexcept {
  return cfg.downsample ? 2 * cfg.crop_size : cfg.crop_size;
}

Rng example_rng(std::uint64_t seed, std::string_view source_id) {
  return Rng(seed).substream(source_id);
}

TrainingExample synthesize_example(const PlanarImage& srgb, const CameraProfile& profile,
                                   const SynthesisConfig& cfg, std::uint64_t seed,
                                   std::string_view source_id) {
  validate(cfg);
  profile.validate();
  if (srgb.channels() != 3) {
    throw Error(ErrorCode::kDimension, "source image must have 3 channels");
  }
  const int min_size = minimum_source_size(cfg);
  if (srgb.height() < min_size || srgb.width() < min_size) {
    throw Error(ErrorCode::kDimension,
                "source is " + std::to_string(srgb.height()) + "x" +
                    std::to_string(srgb.width()) + ", need at least " +
                    std::to_string(min_size) + "x" + std::to_string(min_size));
  }
  const Rng base = example_rng(seed, source_id);
  Rng crop_rng = base.substream("crop");
  Rng unprocess_rng = base.substream("unprocess");
  Rng noise_rng = base.substream("noise-params");
  const Rng field_rng = base.substream("noise-field");

  TrainingExample ex;
  ex.source_id = std::string(source_id);
  ex.seed = seed;

  const PlanarImage small = cfg.downsample ? downsample_2x_gaussian(srgb) : srgb;
  CropOptions crop_options;
  crop_options.allow_flips = cfg.allow_flips;
  ex.crop = sample_crop(small.height(), small.width(), cfg.crop_size, crop_rng, crop_options);
  const PlanarImage patch = apply_crop(small, ex.crop);

  UnprocessResult unprocessed = unprocess(patch, profile.unprocess, unprocess_rng);
  ex.params = unprocessed.params;
  ex.ccm_weights = std::move(unprocessed.ccm_weights);
  const BayerImage clean = mosaic(unprocessed.raw_rgb, ex.params.bayer_pattern);
  ex.clean_planes = pack_bayer_planes(clean);

  ex.noise = sample_noise_params(profile.noise, noise_rng);
  NoiseOptions noise_options;
  noise_options.clip = cfg.clip_noisy;
  const BayerImage noisy =
      cfg.add_noise ? apply_shot_read_noise(clean, ex.noise, field_rng, noise_options) : clean;
  ex.noisy_planes = pack_bayer_planes(noisy);
  ex.noise_map = noise_stddev_map(ex.noisy_planes, ex.noise);
  return ex;
}

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kValidation:
      return "validation";
    case Split::kTest:
      return "test";
  }
  return "train";
}

Split assign_split(std::string_view key) noexcept {
  const std::uint64_t bucket = mix64(fnv1a64(key)) % 1000;
  if (bucket < 900) return Split::kTrain;
  if (bucket < 950) return Split::kValidation;
  return Split::kTest;
}

namespace {

std::vector<float> block_of(const PlanarImage& image) {
  return {image.samples().begin(), image.samples().end()};
}

Json sidecar_json(const TrainingExample& ex, std::string_view config_hash) {
  Json j;
  j["kind"] = "training_example";
  j["blocks"] = Json::array({"noisy", "clean", "noise_map"});
  j["source_id"] = ex.source_id;
  j["seed"] = ex.seed;
  j["config_hash"] = std::string(config_hash);
  j["split"] = std::string(to_string(assign_split(ex.source_id)));
  j["params"] = detail::to_json(ex.params);
  j["noise"] = detail::to_json(ex.noise);
  j["ccm_weights"] = ex.ccm_weights;
  j["crop"] = Json{{"top", ex.crop.top},
                   {"left", ex.crop.left},
                   {"size", ex.crop.size},
                   {"flip_horizontal", ex.crop.flip_horizontal},
                   {"flip_vertical", ex.crop.flip_vertical}};
  return j;
}

}  // namespace

Container encode_example(const TrainingExample& ex, std::string_view config_hash) {
  if (!ex.noisy_planes.same_geometry(ex.clean_planes) ||
      !ex.noisy_planes.same_geometry(ex.noise_map) || ex.noisy_planes.channels() != 4) {
    throw Error(ErrorCode::kDimension, "example planes must share a 4-channel geometry");
  }
  Container c;
  c.height = static_cast<std::uint32_t>(ex.noisy_planes.height());
  c.width = static_cast<std::uint32_t>(ex.noisy_planes.width());
  c.channels = 4;
  c.blocks = {block_of(ex.noisy_planes), block_of(ex.clean_planes), block_of(ex.noise_map)};
  c.sidecar = sidecar_json(ex, config_hash).dump(2);
  return c;
}

TrainingExample decode_example(const Container& c) {
  const Json j = detail::parse_json(c.sidecar, "example sidecar");
  if (!j.is_object() || j.value("kind", "") != "training_example") {
    throw Error(ErrorCode::kFormat, "container does not hold a training example");
  }
  if (c.blocks.size() != 3 || c.channels != 4) {
    throw Error(ErrorCode::kFormat, "training example needs three 4-channel blocks");
  }
  try {
    TrainingExample ex;
    const int h = static_cast<int>(c.height);
    const int w = static_cast<int>(c.width);
    ex.noisy_planes = PlanarImage(4, h, w, c.blocks[0]);
    ex.clean_planes = PlanarImage(4, h, w, c.blocks[1]);
    ex.noise_map = PlanarImage(4, h, w, c.blocks[2]);
    ex.params = detail::pipeline_params_from_json(j.at("params"));
    ex.noise = detail::noise_params_from_json(j.at("noise"));
    ex.ccm_weights = j.at("ccm_weights").get<std::vector<double>>();
    ex.source_id = j.at("source_id").get<std::string>();
    ex.seed = j.at("seed").get<std::uint64_t>();
    const auto& crop = j.at("crop");
    ex.crop.top = crop.at("top").get<int>();
    ex.crop.left = crop.at("left").get<int>();
    ex.crop.size = crop.at("size").get<int>();
    ex.crop.flip_horizontal = crop.at("flip_horizontal").get<bool>();
    ex.crop.flip_vertical = crop.at("flip_vertical").get<bool>();
    return ex;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("example sidecar: ") + e.what());
  }
}

namespace {

struct Outcome {
  bool ok = false;
  CorpusRecord record;
  std::string reason;
};

// Reuses an existing container when it was produced with the same inputs.
bool try_reuse(const std::filesystem::path& path, const std::string& source_id,
               std::uint64_t seed, const std::string& hash, CorpusRecord& record) {
  if (!std::filesystem::exists(path)) return false;
  try {
    const Container c = read_container(path);
    const Json j = detail::parse_json(c.sidecar, "sidecar");
    if (j.value("source_id", "") != source_id || j.value("config_hash", "") != hash ||
        j.value("seed", std::uint64_t{0}) != seed) {
      return false;
    }
    const TrainingExample ex = decode_example(c);
    record.noise = ex.noise;
    record.reused = true;
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

Outcome synthesize_one(const std::filesystem::path& source, const CameraProfile& profile,
                       const SynthesisConfig& cfg, std::uint64_t seed, const std::string& hash,
                       const std::filesystem::path& out_dir) {
  Outcome o;
  const std::string id = source.filename().string();
  o.record.source_id = id;
  o.record.split = assign_split(id);
  o.record.container = id + ".uraw";
  const auto target = out_dir / o.record.container;
  try {
    if (try_reuse(target, id, seed, hash, o.record)) {
      o.ok = true;
      return o;
    }
    const PlanarImage srgb = read_image(source);
    const TrainingExample ex = synthesize_example(srgb, profile, cfg, seed, id);
    write_container(target, encode_example(ex, hash));
    o.record.noise = ex.noise;
    o.ok = true;
  } catch (const std::exception& e) {
    o.reason = e.what();
  }
  return o;
}

}  // namespace

CorpusSummary synthesize_corpus(const std::filesystem::path& source_dir,
                                const CameraProfile& profile, const SynthesisConfig& cfg,
                                std::uint64_t seed, const std::filesystem::path& out_dir,
                                CorpusOptions options) {
  validate(cfg);
  profile.validate();
  std::error_code ec;
  if (!std::filesystem::is_directory(source_dir, ec)) {
    throw Error(ErrorCode::kIo, "source directory " + source_dir.string() + " is not readable");
  }
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> sources;
  for (const auto& entry : std::filesystem::directory_iterator(source_dir, ec)) {
    if (entry.is_regular_file() && is_supported_image(entry.path())) {
      sources.push_back(entry.path());
    }
  }
  if (ec) throw Error(ErrorCode::kIo, "cannot list " + source_dir.string() + ": " + ec.message());
  std::sort(sources.begin(), sources.end(), [](const auto& a, const auto& b) {
    return a.filename().string() < b.filename().string();
  });

  CorpusSummary summary;
  summary.seed = seed;
  summary.config_hash = synthesis_config_hash(profile, cfg);

  std::vector<Outcome> outcomes(sources.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < sources.size(); i = next++) {
      outcomes[i] = synthesize_one(sources[i], profile, cfg, seed, summary.config_hash, out_dir);
    }
  };
  unsigned jobs = options.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                    : options.jobs;
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, sources.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
  }

  std::string manifest;
  for (auto& o : outcomes) {
    if (!o.ok) {
      summary.failures.push_back({o.record.source_id, o.reason});
      continue;
    }
    const Json line{{"source_id", o.record.source_id},
                    {"split", std::string(to_string(o.record.split))},
                    {"container", o.record.container},
                    {"lambda_shot", o.record.noise.lambda_shot},
                    {"lambda_read", o.record.noise.lambda_read}};
    manifest += line.dump() + "\n";
    switch (o.record.split) {
      case Split::kTrain:
        ++summary.train;
        break;
      case Split::kValidation:
        ++summary.validation;
        break;
      case Split::kTest:
        ++summary.test;
        break;
    }
    summary.records.push_back(std::move(o.record));
  }
  write_file_bytes(out_dir / "manifest.jsonl",
                   std::span(reinterpret_cast<const std::uint8_t*>(manifest.data()), manifest.size()));

  Json failures = Json::array();
  for (const auto& f : summary.failures) {
    failures.push_back(Json{{"source_id", f.source_id}, {"reason", f.reason}});
  }
  const Json summary_json{
      {"seed", seed},
      {"config_hash", summary.config_hash},
      {"examples", summary.records.size()},
      {"counts", Json{{"train", summary.train},
                      {"validation", summary.validation},
                      {"test", summary.test}}},
      {"manifest_hash", hex64(fnv1a64(manifest))},
      {"failures", failures}};
  const std::string text = summary_json.dump(2) + "\n";
  write_file_bytes(out_dir / "summary.json",
                   std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  return summary;
}

}  // namespace unraw
