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

#include <string>
#include <vector>

#include "unraw/forward_pipeline.hpp"
#include "unraw/image.hpp"
#include "unraw/matrix3.hpp"
#include "unraw/rng.hpp"

namespace unraw {

struct NamedCcm {
  std::string name;
  /// Camera RGB -> sRGB.
  Matrix3 matrix = kIdentity3;

  friend bool operator==(const NamedCcm&, const NamedCcm&) = default;
};

/// Fixed colour correction matrices of the cameras being imitated. Sampled
/// matrices are convex combinations of these.
struct CcmSet {
  std::vector<NamedCcm> matrices;

  void validate() const;
  friend bool operator==(const CcmSet&, const CcmSet&) = default;
};

struct Range {
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const Range&, const Range&) = default;
};

struct UnprocessConfig {
  CcmSet ccm_set;
  Range red_gain = {1.9, 2.4};
  Range blue_gain = {1.5, 1.9};
  double inverse_digital_gain_mean = 0.8;
  /// Zero collapses the distribution onto the mean.
  double inverse_digital_gain_stddev = 0.1;
  /// Draws are resampled until they land in (lo, hi]; lo must be >= 0.
  Range inverse_digital_gain_bounds = {0.0, 1.1};
  double highlight_threshold = kHighlightThreshold;
  double gamma_epsilon = kGammaEpsilon;
  BayerPattern bayer_pattern = BayerPattern::kRggb;

  void validate() const;
  friend bool operator==(const UnprocessConfig&, const UnprocessConfig&) = default;
};

/// 1/2 - sin(asin(1 - 2y) / 3) on y clamped to [0, 1].
double inverse_smoothstep(double y) noexcept;
PlanarImage inverse_tone_map_smoothstep(const PlanarImage& image);

/// max(y, eps)^2.2
double gamma_decompress(double y, double epsilon = kGammaEpsilon) noexcept;
PlanarImage gamma_decompress(const PlanarImage& image, double epsilon);

struct CcmSample {
  Matrix3 matrix = kIdentity3;
  std::vector<double> weights;
};

/// Convex combination of the set with weights uniform over the simplex
/// (normalised unit-rate exponential draws).
CcmSample sample_ccm(const CcmSet& set, Rng& rng);
/// Combination with caller-supplied weights; they must be non-negative and
/// sum to 1 within 1e-12.
Matrix3 combine_ccms(const CcmSet& set, const std::vector<double>& weights);

/// (red, 1, blue), red and blue uniform and independent.
Vec3 sample_wb_gains(const UnprocessConfig& cfg, Rng& rng);

/// Normal draw rejection-resampled into the configured bounds.
double sample_inverse_digital_gain(const UnprocessConfig& cfg, Rng& rng);

/// Highlight-preserving division of `x` by forward gain `g`:
///   a(x) = (max(x - t, 0) / (1 - t))^2
///   f    = max(x / g, (1 - a) x / g + a x)
/// Exactly x / g for x <= t or g <= 1, and f(1, g) = 1.
double safe_inverse_gain(double x, double gain, double threshold);

/// Per channel the forward gain is wb_c / inverse_digital_gain; samples are
/// mapped through safe_inverse_gain with that gain.
PlanarImage apply_inverse_gains(const PlanarImage& rgb, const Vec3& wb_gains,
                                double inverse_digital_gain, double threshold);

/// Scale that matches two exponentially distributed intensity sets: the
/// ratio of their sample means.
double estimate_gain_ratio(double mean_a, double mean_b);

struct UnprocessResult {
  /// Linear camera RGB in [0, 1].
  PlanarImage raw_rgb;
  PipelineParams params;
  std::vector<double> ccm_weights;
};

/// Samples a CCM, white balance and inverse digital gain, then runs
/// unprocess_with_params.
UnprocessResult unprocess(const PlanarImage& srgb, const UnprocessConfig& cfg,
                          Rng& rng);

/// The deterministic chain: clamp to [0, 1] -> inverse smoothstep -> gamma
/// decompress -> inverse CCM (clamped to [0, 1]) -> inverse gains.
PlanarImage unprocess_with_params(const PlanarImage& srgb,
                                  const PipelineParams& params);

/// Camera RGB right before the inverse gains, without the [0, 1] clamp.
/// Useful for telling which pixels were clipped or highlight-compressed.
PlanarImage unprocess_camera_rgb(const PlanarImage& srgb,
                                 const PipelineParams& params);

}  // namespace unraw
