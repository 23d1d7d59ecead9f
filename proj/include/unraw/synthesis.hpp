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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "unraw/container.hpp"
#include "unraw/core_image.hpp"
#include "unraw/noise_model.hpp"
#include "unraw/profile.hpp"
#include "unraw/unprocess.hpp"

namespace unraw {

/// Half-resolution four-plane packing. Channel k holds the samples at
/// position k of the 2x2 block in raster order, so for RGGB the channels are
/// R, G (red row), G (blue row), B.
PlanarImage pack_bayer_planes(const BayerImage& bayer);
BayerImage unpack_bayer_planes(const PlanarImage& planes, BayerPattern pattern);

struct SynthesisConfig {
  int crop_size = 128;
  bool downsample = true;
  bool allow_flips = true;
  bool add_noise = true;
  /// Clamp noisy samples to [0, 1].
  bool clip_noisy = true;
};

struct TrainingExample {
  PlanarImage noisy_planes;
  PlanarImage clean_planes;
  PlanarImage noise_map;
  PipelineParams params;
  NoiseParams noise;
  std::vector<double> ccm_weights;
  CropSpec crop;
  std::string source_id;
  std::uint64_t seed = 0;
};

/// Hash of the profile and the synthesis settings, as 16 hex digits.
std::string synthesis_config_hash(const CameraProfile& profile, const SynthesisConfig& cfg);

/// Minimum source side for the configured crop.
int minimum_source_size(const SynthesisConfig& cfg) noexcept;

/// Random stream for one source image: a pure function of (seed, key).
Rng example_rng(std::uint64_t seed, std::string_view source_id);

/// downsample -> crop/flip -> unprocess -> mosaic -> pack (clean), then
/// sampled shot/read noise on the mosaic -> pack (noisy), and the noise map
/// of the noisy planes.
TrainingExample synthesize_example(const PlanarImage& srgb,
                                   const CameraProfile& profile,
                                   const SynthesisConfig& cfg,
                                   std::uint64_t seed,
                                   std::string_view source_id);

enum class Split { kTrain, kValidation, kTest };

std::string_view to_string(Split split);

/// 90/5/5 assignment from a stable hash of the key.
Split assign_split(std::string_view key) noexcept;

/// Container with blocks noisy, clean, noise map and a JSON sidecar.
Container encode_example(const TrainingExample& example,
                         std::string_view config_hash);
TrainingExample decode_example(const Container& container);

struct CorpusFailure {
  std::string source_id;
  std::string reason;
};

struct CorpusRecord {
  std::string source_id;
  Split split = Split::kTrain;
  std::string container;
  NoiseParams noise;
  bool reused = false;
};

struct CorpusSummary {
  std::uint64_t seed = 0;
  std::string config_hash;
  std::vector<CorpusRecord> records;
  std::vector<CorpusFailure> failures;
  std::size_t train = 0;
  std::size_t validation = 0;
  std::size_t test = 0;
};

struct CorpusOptions {
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned jobs = 1;
};

/// Synthesises one container per supported image in `source_dir` (sorted by
/// file name) into `out_dir`, and writes manifest.jsonl (one record per
/// example) and summary.json. Containers already present with the same seed
/// and config hash are reused. Per-file failures are collected, not thrown.
CorpusSummary synthesize_corpus(const std::filesystem::path& source_dir,
                                const CameraProfile& profile,
                                const SynthesisConfig& cfg, std::uint64_t seed,
                                const std::filesystem::path& out_dir,
                                CorpusOptions options = {});

}  // namespace unraw
