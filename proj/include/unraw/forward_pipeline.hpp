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

#include "unraw/image.hpp"
#include "unraw/matrix3.hpp"

namespace unraw {

inline constexpr double kGammaEpsilon = 1e-8;
inline constexpr double kHighlightThreshold = 0.9;

/// Per-image camera metadata shared by the forward and inverse pipelines.
struct PipelineParams {
  /// Red, green, blue white-balance gains. Green is always 1.
  Vec3 wb_gains = {1.0, 1.0, 1.0};
  double inverse_digital_gain = 1.0;
  /// Camera RGB -> sRGB primaries.
  Matrix3 ccm = kIdentity3;
  BayerPattern bayer_pattern = BayerPattern::kRggb;
  double gamma_epsilon = kGammaEpsilon;
  double highlight_threshold = kHighlightThreshold;
  bool tone_map_enabled = false;

  /// Throws kDomain or kConfig when an invariant is violated.
  void validate() const;
  friend bool operator==(const PipelineParams&, const PipelineParams&) = default;
};

struct GainOptions {
  /// Clamp to [0, 1] after the gain, as the sensor would saturate.
  bool clip = true;
  /// Also multiply by 1 / inverse_digital_gain.
  bool apply_digital_gain = false;
};

/// Multiplies every sample by the gain of its channel.
BayerImage apply_wb_gains(const BayerImage& raw, const PipelineParams& params,
                          GainOptions options = {});
PlanarImage apply_wb_gains(const PlanarImage& rgb, const PipelineParams& params,
                           GainOptions options = {});

/// Left-multiplies each pixel's colour vector by `ccm`. No clamping.
PlanarImage apply_ccm(const PlanarImage& rgb, const Matrix3& ccm);

/// max(x, eps)^(1/2.2)
double gamma_compress(double x, double epsilon = kGammaEpsilon) noexcept;
/// With `clamp`, samples are limited to [0, 1] before the curve.
PlanarImage gamma_compress(const PlanarImage& image, double epsilon, bool clamp);

/// 3x^2 - 2x^3 on x clamped to [0, 1].
double smoothstep(double x) noexcept;
PlanarImage tone_map_smoothstep(const PlanarImage& image);

struct ProcessOptions {
  /// Undo the inverse digital gain together with white balance. Off on the
  /// loss path, on when rendering unprocessed data back to sRGB.
  bool apply_digital_gain = false;
  /// Clamp to [0, 1] before the gamma curve (rendering). The loss path
  /// leaves values unclamped.
  bool clamp_output = true;
};

/// White balance (clipped) -> bilinear demosaic -> CCM -> gamma -> optional
/// smoothstep (params.tone_map_enabled).
PlanarImage process_raw_to_srgb(const BayerImage& bayer,
                                const PipelineParams& params,
                                ProcessOptions options = {});

}  // namespace unraw
