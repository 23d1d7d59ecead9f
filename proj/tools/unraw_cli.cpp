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

// Command-line front end. Everything goes through the C API in unraw.h.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "unraw/unraw.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFileFailure = 1;
constexpr int kExitUsage = 2;

struct CliError {
  int exit_code;
  std::string message;
};

int exit_code_for(unraw_status status) {
  return status == UNRAW_ERR_CONFIG || status == UNRAW_ERR_ARGUMENT ? kExitUsage
                                                                    : kExitFileFailure;
}

void check(unraw_status status, const std::string& context) {
  if (status != UNRAW_OK) {
    throw CliError{exit_code_for(status), context + ": " + unraw_last_error()};
  }
}

struct ProfileDeleter {
  void operator()(unraw_profile* p) const { unraw_profile_free(p); }
};
struct ImageDeleter {
  void operator()(unraw_image* p) const { unraw_image_free(p); }
};
struct RawDeleter {
  void operator()(unraw_raw* p) const { unraw_raw_free(p); }
};
struct HistogramDeleter {
  void operator()(unraw_histogram* p) const { unraw_histogram_free(p); }
};
struct StringDeleter {
  void operator()(char* p) const { unraw_string_free(p); }
};

using Profile = std::unique_ptr<unraw_profile, ProfileDeleter>;
using Image = std::unique_ptr<unraw_image, ImageDeleter>;
using Raw = std::unique_ptr<unraw_raw, RawDeleter>;
using Histogram = std::unique_ptr<unraw_histogram, HistogramDeleter>;
using Text = std::unique_ptr<char, StringDeleter>;

Profile load_profile(const std::string& name) {
  unraw_profile* p = nullptr;
  const auto status = unraw_profile_resolve(name.c_str(), &p);
  if (status != UNRAW_OK) {
    throw CliError{kExitUsage, std::string("profile: ") + unraw_last_error()};
  }
  return Profile(p);
}

std::string take(char* text) { return Text(text).get() ? std::string(text) : std::string(); }

// Resolves an optional --seed, reporting the realised value when drawn.
std::uint64_t realise_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  const std::uint64_t drawn = unraw_entropy_seed();
  std::cerr << "seed: " << drawn << "\n";
  return drawn;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw CliError{kExitFileFailure, "cannot write " + path};
}

bool is_image_path(const fs::path& p) {
  auto ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".ppm" || ext == ".pgm" || ext == ".pnm";
}

// Expands directories into their supported images, sorted by name.
std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(in)) {
        if (e.is_regular_file() && is_image_path(e.path())) found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.emplace_back(in);
    }
  }
  return out;
}

struct UnprocessArgs {
  std::vector<std::string> inputs;
  std::string profile = "default";
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  bool noise = false;
};

int run_unprocess(const UnprocessArgs& args) {
  const Profile profile = load_profile(args.profile);
  const std::uint64_t seed = realise_seed(args.seed);
  std::error_code ec;
  fs::create_directories(args.out, ec);
  if (ec) throw CliError{kExitFileFailure, "cannot create " + args.out + ": " + ec.message()};
  int failures = 0;
  for (const auto& path : expand_inputs(args.inputs)) {
    const std::string key = path.filename().string();
    const fs::path target = fs::path(args.out) / (key + ".uraw");
    unraw_image* image = nullptr;
    unraw_raw* raw = nullptr;
    unraw_status status = unraw_image_load(path.string().c_str(), &image);
    Image image_guard(image);
    if (status == UNRAW_OK) {
      status = unraw_unprocess(image, profile.get(), seed, key.c_str(),
                               args.noise ? UNRAW_UNPROCESS_ADD_NOISE : 0u, &raw);
    }
    Raw raw_guard(raw);
    if (status == UNRAW_OK) status = unraw_raw_save(raw, target.string().c_str());
    if (status != UNRAW_OK) {
      ++failures;
      std::cerr << path.string() << ": error: " << unraw_last_error() << "\n";
    } else {
      std::cout << path.string() << " -> " << target.string() << "\n";
    }
  }
  if (failures > 0) std::cerr << failures << " file(s) failed\n";
  return failures > 0 ? kExitFileFailure : kExitOk;
}

struct ProcessArgs {
  std::string input;
  std::string out;
  std::string block = "clean";
  bool tone_map = false;
  bool digital_gain = false;
  bool render = false;
  int bits = 8;
};

int run_process(const ProcessArgs& args) {
  unraw_raw* raw = nullptr;
  check(unraw_raw_load(args.input.c_str(), args.block.c_str(), &raw), args.input);
  const Raw raw_guard(raw);
  unsigned flags = 0;
  if (args.tone_map || args.render) flags |= UNRAW_PROCESS_TONE_MAP;
  if (args.digital_gain || args.render) flags |= UNRAW_PROCESS_DIGITAL_GAIN;
  unraw_image* image = nullptr;
  check(unraw_process(raw, flags, &image), args.input);
  const Image image_guard(image);
  check(unraw_image_save(image, args.out.c_str(), args.bits), args.out);
  std::cout << args.input << " -> " << args.out << "\n";
  return kExitOk;
}

struct SynthesizeArgs {
  std::string source;
  std::string out;
  std::string profile = "default";
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  int crop = 128;
  bool no_downsample = false;
  bool no_flips = false;
  bool no_noise = false;
  bool no_clip = false;
};

int run_synthesize(const SynthesizeArgs& args) {
  const Profile profile = load_profile(args.profile);
  const std::uint64_t seed = realise_seed(args.seed);
  unraw_synthesis_options options;
  unraw_synthesis_options_default(&options);
  options.crop_size = args.crop;
  options.downsample = !args.no_downsample;
  options.allow_flips = !args.no_flips;
  options.add_noise = !args.no_noise;
  options.clip_noisy = !args.no_clip;
  options.jobs = args.jobs;
  unraw_corpus_result result{};
  char* failures = nullptr;
  check(unraw_synthesize_corpus(args.source.c_str(), profile.get(), &options, seed,
                                args.out.c_str(), &result, &failures),
        "synthesize");
  const std::string failure_text = take(failures);
  std::istringstream lines(failure_text);
  for (std::string line; std::getline(lines, line);) {
    const auto tab = line.find('\t');
    std::cerr << line.substr(0, tab) << ": skipped: " << line.substr(tab + 1) << "\n";
  }
  std::cout << "examples " << result.examples << " (train " << result.train << ", validation "
            << result.validation << ", test " << result.test << "), failures "
            << result.failures << "\n";
  return result.failures > 0 ? kExitFileFailure : kExitOk;
}

struct StatsArgs {
  std::vector<std::string> inputs;
  int bins = 64;
  bool unprocess = false;
  std::string profile = "default";
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string summary;
};

int run_stats(const StatsArgs& args) {
  Profile profile;
  std::uint64_t seed = 0;
  if (args.unprocess) {
    profile = load_profile(args.profile);
    seed = realise_seed(args.seed);
  }
  unraw_histogram* h = nullptr;
  check(unraw_histogram_create(3, args.bins, &h), "stats");
  const Histogram hist(h);
  int failures = 0;
  for (const auto& path : expand_inputs(args.inputs)) {
    unraw_image* image = nullptr;
    unraw_status status = unraw_image_load(path.string().c_str(), &image);
    Image image_guard(image);
    if (status == UNRAW_OK && args.unprocess) {
      unraw_image* raw = nullptr;
      const std::string key = path.filename().string();
      status = unraw_unprocess_rgb(image, profile.get(), seed, key.c_str(), &raw);
      if (status == UNRAW_OK) image_guard.reset(raw);
    }
    if (status == UNRAW_OK) status = unraw_histogram_add(hist.get(), image_guard.get());
    if (status != UNRAW_OK) {
      ++failures;
      std::cerr << path.string() << ": error: " << unraw_last_error() << "\n";
    }
  }
  char* counts = nullptr;
  char* summary = nullptr;
  check(unraw_histogram_csv(hist.get(), &counts, &summary), "stats");
  const std::string counts_text = take(counts);
  const std::string summary_text = take(summary);
  write_text(args.out, counts_text);
  if (!args.summary.empty()) {
    write_text(args.summary, summary_text);
  } else if (!args.out.empty() && args.out != "-") {
    std::cout << summary_text;
  }
  return failures > 0 ? kExitFileFailure : kExitOk;
}

struct MetricsArgs {
  std::string estimate;
  std::string reference;
  bool json = false;
  std::string block = "clean";
  std::string reference_block = "clean";
};

std::string format_db(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os.precision(6);
  os << std::fixed << v;
  return os.str();
}

int run_metrics(const MetricsArgs& args) {
  if (is_image_path(args.estimate) && is_image_path(args.reference)) {
    unraw_image* a = nullptr;
    unraw_image* b = nullptr;
    check(unraw_image_load(args.estimate.c_str(), &a), args.estimate);
    const Image ga(a);
    check(unraw_image_load(args.reference.c_str(), &b), args.reference);
    const Image gb(b);
    double psnr = 0.0;
    double ssim = 0.0;
    check(unraw_image_compare(a, b, &psnr, &ssim), "metrics");
    std::ostringstream os;
    if (args.json) {
      os << "{\"psnr\": " << (std::isinf(psnr) ? "\"inf\"" : format_db(psnr))
         << ", \"ssim\": " << format_db(ssim) << ", \"dssim\": " << format_db(unraw_dssim(ssim))
         << "}\n";
    } else {
      os << "psnr_db  " << format_db(psnr) << "\nssim     " << format_db(ssim) << "\ndssim    "
         << format_db(unraw_dssim(ssim)) << "\n";
    }
    std::cout << os.str();
    return kExitOk;
  }
  unraw_raw* a = nullptr;
  unraw_raw* b = nullptr;
  check(unraw_raw_load(args.estimate.c_str(), args.block.c_str(), &a), args.estimate);
  const Raw ga(a);
  check(unraw_raw_load(args.reference.c_str(), args.reference_block.c_str(), &b),
        args.reference);
  const Raw gb(b);
  unraw_metric_report report{};
  check(unraw_raw_compare(a, b, &report), "metrics");
  char* text = nullptr;
  check(unraw_report_format(&report, args.json ? 1 : 0, &text), "metrics");
  std::cout << take(text);
  return kExitOk;
}

struct ReductionArgs {
  std::vector<double> psnr;
  std::vector<double> ssim;
};

int run_reduction(const ReductionArgs& args) {
  if (args.psnr.empty() && args.ssim.empty()) {
    throw CliError{kExitUsage, "reduction: give --psnr REF BEST and/or --ssim REF BEST"};
  }
  std::ostringstream os;
  os.precision(6);
  os << std::fixed;
  os << "metric,reference,best,relative_reduction\n";
  if (!args.psnr.empty()) {
    const double r = unraw_psnr_to_rmse_reduction(args.psnr[0], args.psnr[1]);
    os << "rmse," << args.psnr[0] << ',' << args.psnr[1] << ',' << r << '\n';
  }
  if (!args.ssim.empty()) {
    double r = 0.0;
    check(unraw_dssim_reduction(args.ssim[0], args.ssim[1], &r), "reduction");
    os << "dssim," << args.ssim[0] << ',' << args.ssim[1] << ',' << r << '\n';
  }
  std::cout << os.str();
  return kExitOk;
}

struct SampleArgs {
  std::string profile = "default";
  std::uint64_t n = 1000;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int run_sample_params(const SampleArgs& args) {
  const Profile profile = load_profile(args.profile);
  const std::uint64_t seed = realise_seed(args.seed);
  char* csv = nullptr;
  check(unraw_sample_params_csv(profile.get(), args.n, seed, &csv), "sample-params");
  write_text(args.out, take(csv));
  return kExitOk;
}

int run_profile(const std::string& name, const std::string& out) {
  const Profile profile = load_profile(name);
  char* json = nullptr;
  check(unraw_profile_to_json(profile.get(), &json), "profile");
  write_text(out, take(json));
  return kExitOk;
}

int run_inspect(const std::string& path) {
  char* json = nullptr;
  check(unraw_container_sidecar(path.c_str(), &json), path);
  std::cout << take(json) << "\n";
  return kExitOk;
}

int run_verify(const std::vector<std::string>& paths) {
  int failures = 0;
  for (const auto& p : paths) {
    int matches = 0;
    if (unraw_example_verify(p.c_str(), &matches) != UNRAW_OK) {
      std::cerr << p << ": error: " << unraw_last_error() << "\n";
      ++failures;
    } else if (!matches) {
      std::cerr << p << ": noise map does not match the noisy planes\n";
      ++failures;
    } else {
      std::cout << p << ": ok\n";
    }
  }
  return failures > 0 ? kExitFileFailure : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Camera pipeline simulation: unprocess sRGB images into raw sensor data, "
               "process raw data to sRGB, and synthesise noisy/clean training pairs."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(unraw_version()));

  UnprocessArgs unprocess_args;
  auto* unprocess_cmd = app.add_subcommand("unprocess", "sRGB image(s) -> raw mosaic containers");
  unprocess_cmd->add_option("inputs", unprocess_args.inputs, "Images or directories")->required();
  unprocess_cmd->add_option("--profile", unprocess_args.profile, "Camera profile");
  unprocess_cmd->add_option("--seed", unprocess_args.seed, "Random seed");
  unprocess_cmd->add_option("--out", unprocess_args.out, "Output directory");
  unprocess_cmd->add_flag("--noise", unprocess_args.noise, "Add sampled shot/read noise");

  ProcessArgs process_args;
  auto* process_cmd = app.add_subcommand("process", "raw container -> sRGB image");
  process_cmd->add_option("input", process_args.input, "Container")->required();
  process_cmd->add_option("--out", process_args.out, "Output PNG/PPM")->required();
  process_cmd->add_flag("--tone-map", process_args.tone_map, "Apply the smoothstep tone curve");
  process_cmd->add_flag("--digital-gain", process_args.digital_gain,
                        "Undo the inverse digital gain");
  process_cmd->add_flag("--render", process_args.render, "Same as --tone-map --digital-gain");
  process_cmd->add_option("--block", process_args.block, "Training-example block")
      ->check(CLI::IsMember({"clean", "noisy"}));
  process_cmd->add_option("--bits", process_args.bits, "Output bit depth")
      ->check(CLI::IsMember({8, 16}));

  SynthesizeArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synthesize", "image folder -> training-pair corpus");
  synth_cmd->add_option("source", synth_args.source, "Source image directory")->required();
  synth_cmd->add_option("--out", synth_args.out, "Output directory")->required();
  synth_cmd->add_option("--profile", synth_args.profile, "Camera profile");
  synth_cmd->add_option("--seed", synth_args.seed, "Random seed");
  synth_cmd->add_option("--jobs", synth_args.jobs, "Worker threads (0 = all cores)");
  synth_cmd->add_option("--crop", synth_args.crop, "Crop size in pixels");
  synth_cmd->add_flag("--no-downsample", synth_args.no_downsample, "Skip the 2x downsample");
  synth_cmd->add_flag("--no-flips", synth_args.no_flips, "Disable random flips");
  synth_cmd->add_flag("--no-noise", synth_args.no_noise, "Noisy planes equal clean planes");
  synth_cmd->add_flag("--no-clip", synth_args.no_clip, "Do not clamp noisy samples");

  StatsArgs stats_args;
  auto* stats_cmd = app.add_subcommand("stats", "Per-channel histograms (CSV)");
  stats_cmd->add_option("inputs", stats_args.inputs, "Images or directories")->required();
  stats_cmd->add_option("--bins", stats_args.bins, "Histogram bins");
  stats_cmd->add_flag("--unprocess", stats_args.unprocess, "Histogram the unprocessed raw RGB");
  stats_cmd->add_option("--profile", stats_args.profile, "Camera profile");
  stats_cmd->add_option("--seed", stats_args.seed, "Random seed");
  stats_cmd->add_option("--out", stats_args.out, "Histogram CSV (default stdout)");
  stats_cmd->add_option("--summary", stats_args.summary, "Per-channel mean/median CSV");

  MetricsArgs metrics_args;
  auto* metrics_cmd = app.add_subcommand("metrics", "PSNR/SSIM between two images or mosaics");
  metrics_cmd->add_option("estimate", metrics_args.estimate, "Estimate")->required();
  metrics_cmd->add_option("reference", metrics_args.reference, "Reference")->required();
  metrics_cmd->add_flag("--json", metrics_args.json, "JSON output");
  metrics_cmd->add_option("--block", metrics_args.block, "Estimate block for training examples")
      ->check(CLI::IsMember({"clean", "noisy"}));
  metrics_cmd->add_option("--reference-block", metrics_args.reference_block,
                          "Reference block for training examples")
      ->check(CLI::IsMember({"clean", "noisy"}));

  ReductionArgs reduction_args;
  auto* reduction_cmd =
      app.add_subcommand("reduction", "Relative error reduction from PSNR or SSIM pairs");
  reduction_cmd->add_option("--psnr", reduction_args.psnr, "REF BEST")->expected(2);
  reduction_cmd->add_option("--ssim", reduction_args.ssim, "REF BEST")->expected(2);

  SampleArgs sample_args;
  auto* sample_cmd = app.add_subcommand("sample-params", "Sampled camera parameters (CSV)");
  sample_cmd->add_option("--profile", sample_args.profile, "Camera profile");
  sample_cmd->add_option("--n", sample_args.n, "Number of samples");
  sample_cmd->add_option("--seed", sample_args.seed, "Random seed");
  sample_cmd->add_option("--out", sample_args.out, "Output CSV (default stdout)");

  std::string profile_name = "default";
  std::string profile_out;
  auto* profile_cmd = app.add_subcommand("profile", "Print a profile as canonical JSON");
  profile_cmd->add_option("--profile", profile_name, "Camera profile");
  profile_cmd->add_option("--out", profile_out, "Output file (default stdout)");

  std::string inspect_path;
  auto* inspect_cmd = app.add_subcommand("inspect", "Print a container's sidecar");
  inspect_cmd->add_option("container", inspect_path, "Container")->required();

  std::vector<std::string> verify_paths;
  auto* verify_cmd =
      app.add_subcommand("verify", "Check stored noise maps against the noisy planes");
  verify_cmd->add_option("containers", verify_paths, "Training-example containers")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*unprocess_cmd) return run_unprocess(unprocess_args);
    if (*process_cmd) return run_process(process_args);
    if (*synth_cmd) return run_synthesize(synth_args);
    if (*stats_cmd) return run_stats(stats_args);
    if (*metrics_cmd) return run_metrics(metrics_args);
    if (*reduction_cmd) return run_reduction(reduction_args);
    if (*sample_cmd) return run_sample_params(sample_args);
    if (*profile_cmd) return run_profile(profile_name, profile_out);
    if (*inspect_cmd) return run_inspect(inspect_path);
    if (*verify_cmd) return run_verify(verify_paths);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  }
  return kExitUsage;
}
