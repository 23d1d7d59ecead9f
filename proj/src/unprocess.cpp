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

#include "unraw/unprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "unraw/error.hpp"

namespace unraw {

void CcmSet::validate() const {
  if (matrices.empty()) {
    throw Error(ErrorCode::kConfig, "CCM set is empty");
  }
  for (const auto& m : matrices) {
    for (const auto& row : m.matrix) {
      for (double v : row) {
        if (!std::isfinite(v)) {
          throw Error(ErrorCode::kConfig, "CCM '" + m.name + "' has a non-finite entry");
        }
      }
    }
    if (!(std::abs(determinant(m.matrix)) > kMinDeterminant)) {
      throw Error(ErrorCode::kConfig, "CCM '" + m.name + "' is not invertible");
    }
  }
}

namespace {

void require_range(const Range& r, const char* what) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.lo > 0.0) || r.lo > r.hi) {
    throw Error(ErrorCode::kConfig, std::string(what) + " range must satisfy 0 < lo <= hi");
  }
}

}  // namespace

void UnprocessConfig::validate() const {
  ccm_set.validate();
  require_range(red_gain, "red gain");
  require_range(blue_gain, "blue gain");
  const auto& b = inverse_digital_gain_bounds;
  if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || b.lo < 0.0 || !(b.lo < b.hi)) {
    throw Error(ErrorCode::kConfig, "inverse digital gain bounds must satisfy 0 <= lo < hi");
  }
  if (!std::isfinite(inverse_digital_gain_mean) ||
      !std::isfinite(inverse_digital_gain_stddev) || inverse_digital_gain_stddev < 0.0) {
    throw Error(ErrorCode::kConfig, "inverse digital gain needs a finite mean and stddev >= 0");
  }
  if (inverse_digital_gain_stddev == 0.0 &&
      !(inverse_digital_gain_mean > b.lo && inverse_digital_gain_mean <= b.hi)) {
    throw Error(ErrorCode::kConfig, "a fixed inverse digital gain must lie inside its bounds");
  }
  if (!(highlight_threshold > 0.0 && highlight_threshold < 1.0)) {
    throw Error(ErrorCode::kConfig, "highlight threshold must lie in (0, 1)");
  }
  if (!std::isfinite(gamma_epsilon) || !(gamma_epsilon > 0.0)) {
    throw Error(ErrorCode::kConfig, "gamma epsilon must be positive");
  }
}

double inverse_smoothstep(double y) noexcept {
  y = std::clamp(y, 0.0, 1.0);
  return 0.5 - std::sin(std::asin(1.0 - 2.0 * y) / 3.0);
}

PlanarImage inverse_tone_map_smoothstep(const PlanarImage& image) {
  PlanarImage out = image;
  for (float& v : out.samples()) v = static_cast<float>(inverse_smoothstep(v));
  return out;
}

double gamma_decompress(double y, double epsilon) noexcept {
  return std::pow(std::max(y, epsilon), 2.2);
}

PlanarImage gamma_decompress(const PlanarImage& image, double epsilon) {
  PlanarImage out = image;
  for (float& v : out.samples()) v = static_cast<float>(gamma_decompress(v, epsilon));
  out.set_color_space(ColorSpace::kLinearSrgbPrimaries);
  return out;
}

Matrix3 combine_ccms(const CcmSet& set, const std::vector<double>& weights) {
  set.validate();
  if (weights.size() != set.matrices.size()) {
    throw Error(ErrorCode::kArgument, "one weight per CCM is required");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw Error(ErrorCode::kArgument, "CCM weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::kArgument, "CCM weights must sum to 1");
  }
  Matrix3 out{};
  for (std::size_t k = 0; k < weights.size(); ++k) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) out[i][j] += weights[k] * set.matrices[k].matrix[i][j];
    }
  }
  return out;
}

CcmSample sample_ccm(const CcmSet& set, Rng& rng) {
  set.validate();
  CcmSample sample;
  if (set.matrices.size() == 1) {
    sample.weights = {1.0};
    sample.matrix = set.matrices.front().matrix;
    return sample;
  }
  // Normalised i.i.d. Exp(1) draws are Dirichlet(1, ..., 1): uniform over
  // the simplex.
  sample.weights.resize(set.matrices.size());
  for (double& w : sample.weights) w = rng.exponential(1.0);
  const double total = std::accumulate(sample.weights.begin(), sample.weights.end(), 0.0);
  for (double& w : sample.weights) w /= total;
  Matrix3 m{};
  for (std::size_t k = 0; k < sample.weights.size(); ++k) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m[i][j] += sample.weights[k] * set.matrices[k].matrix[i][j];
    }
  }
  sample.matrix = m;
  return sample;
}

Vec3 sample_wb_gains(const UnprocessConfig& cfg, Rng& rng) {
  const double red = rng.uniform(cfg.red_gain.lo, cfg.red_gain.hi);
  const double blue = rng.uniform(cfg.blue_gain.lo, cfg.blue_gain.hi);
  return {red, 1.0, blue};
}

double sample_inverse_digital_gain(const UnprocessConfig& cfg, Rng& rng) {
  const auto& b = cfg.inverse_digital_gain_bounds;
  if (cfg.inverse_digital_gain_stddev == 0.0) return cfg.inverse_digital_gain_mean;
  constexpr int kMaxAttempts = 100000;
  for (int i = 0; i < kMaxAttempts; ++i) {
    const double v = rng.normal(cfg.inverse_digital_gain_mean, cfg.inverse_digital_gain_stddev);
    if (v > b.lo && v <= b.hi) return v;
  }
  throw Error(ErrorCode::kConfig,
              "inverse digital gain bounds reject almost every draw of the distribution");
}

double safe_inverse_gain(double x, double gain, double threshold) {
  if (!(gain > 0.0) || !std::isfinite(gain)) {
    throw Error(ErrorCode::kDomain, "gain must be positive");
  }
  const double knee = std::max(x - threshold, 0.0) / (1.0 - threshold);
  const double alpha = knee * knee;
  const double linear = x / gain;
  const double f = std::max(linear, (1.0 - alpha) * linear + alpha * x);
  // Gains below 1 brighten; the sensor still saturates at 1.
  return std::min(f, 1.0);
}

PlanarImage apply_inverse_gains(const PlanarImage& rgb, const Vec3& wb_gains,
                                double inverse_digital_gain, double threshold) {
  if (rgb.channels() != 3) {
    throw Error(ErrorCode::kDimension, "inverse gains need a 3-channel image");
  }
  if (!(inverse_digital_gain > 0.0)) {
    throw Error(ErrorCode::kDomain, "inverse digital gain must be positive");
  }
  PlanarImage out = rgb;
  for (int c = 0; c < 3; ++c) {
    const double gain = wb_gains[static_cast<std::size_t>(c)] / inverse_digital_gain;
    for (float& v : out.plane(c)) v = static_cast<float>(safe_inverse_gain(v, gain, threshold));
  }
  return out;
}

double estimate_gain_ratio(double mean_a, double mean_b) {
  if (!std::isfinite(mean_a) || !std::isfinite(mean_b) || !(mean_a > 0.0) ||
      !(mean_b > 0.0)) {
    throw Error(ErrorCode::kDomain, "sample means must be positive");
  }
  return mean_a / mean_b;
}

namespace {

template <typename PixelFn>
PlanarImage map_pixels(const PlanarImage& srgb, PixelFn&& fn) {
  if (srgb.channels() != 3) {
    throw Error(ErrorCode::kDimension, "unprocessing needs a 3-channel image");
  }
  PlanarImage out(3, srgb.height(), srgb.width(), ColorSpace::kLinearRawRgb);
  auto r = srgb.plane(0), g = srgb.plane(1), b = srgb.plane(2);
  auto ro = out.plane(0), go = out.plane(1), bo = out.plane(2);
  for (std::size_t i = 0; i < srgb.plane_size(); ++i) {
    const Vec3 v = fn(Vec3{r[i], g[i], b[i]});
    ro[i] = static_cast<float>(v[0]);
    go[i] = static_cast<float>(v[1]);
    bo[i] = static_cast<float>(v[2]);
  }
  return out;
}

Vec3 to_camera(const Vec3& srgb, const Matrix3& srgb_to_camera, double epsilon) {
  Vec3 lin;
  for (std::size_t c = 0; c < 3; ++c) {
    lin[c] = gamma_decompress(inverse_smoothstep(std::clamp(srgb[c], 0.0, 1.0)), epsilon);
  }
  return multiply(srgb_to_camera, lin);
}

}  // namespace

PlanarImage unprocess_camera_rgb(const PlanarImage& srgb, const PipelineParams& params) {
  params.validate();
  const Matrix3 to_cam = inverse(params.ccm);
  return map_pixels(srgb, [&](const Vec3& px) {
    return to_camera(px, to_cam, params.gamma_epsilon);
  });
}

PlanarImage unprocess_with_params(const PlanarImage& srgb, const PipelineParams& params) {
  params.validate();
  const Matrix3 to_cam = inverse(params.ccm);
  Vec3 gains;
  for (std::size_t c = 0; c < 3; ++c) gains[c] = params.wb_gains[c] / params.inverse_digital_gain;
  const double t = params.highlight_threshold;
  return map_pixels(srgb, [&](const Vec3& px) {
    Vec3 cam = to_camera(px, to_cam, params.gamma_epsilon);
    for (std::size_t c = 0; c < 3; ++c) {
      cam[c] = safe_inverse_gain(std::clamp(cam[c], 0.0, 1.0), gains[c], t);
    }
    return cam;
  });
}

UnprocessResult unprocess(const PlanarImage& srgb, const UnprocessConfig& cfg, Rng& rng) {
  cfg.validate();
  UnprocessResult result;
  CcmSample ccm = sample_ccm(cfg.ccm_set, rng);
  result.params.ccm = ccm.matrix;
  result.params.wb_gains = sample_wb_gains(cfg, rng);
  result.params.inverse_digital_gain = sample_inverse_digital_gain(cfg, rng);
  result.params.bayer_pattern = cfg.bayer_pattern;
  result.params.gamma_epsilon = cfg.gamma_epsilon;
  result.params.highlight_threshold = cfg.highlight_threshold;
  result.ccm_weights = std::move(ccm.weights);
  result.raw_rgb = unprocess_with_params(srgb, result.params);
  return result;
}

}  // namespace unraw
