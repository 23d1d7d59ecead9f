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

#include "unraw/forward_pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "unraw/core_image.hpp"
#include "unraw/error.hpp"

namespace unraw {

void PipelineParams::validate() const {
  for (double g : wb_gains) {
    if (!std::isfinite(g) || !(g > 0.0)) {
      throw Error(ErrorCode::kDomain, "white balance gains must be positive");
    }
  }
  if (wb_gains[1] != 1.0) {
    throw Error(ErrorCode::kDomain, "green white balance gain must be 1");
  }
  if (!std::isfinite(inverse_digital_gain) || !(inverse_digital_gain > 0.0)) {
    throw Error(ErrorCode::kDomain, "inverse digital gain must be positive");
  }
  for (const auto& row : ccm) {
    for (double v : row) {
      if (!std::isfinite(v)) throw Error(ErrorCode::kDomain, "CCM has a non-finite entry");
    }
  }
  if (!std::isfinite(condition_number(ccm))) {
    throw Error(ErrorCode::kDomain, "CCM is singular");
  }
  if (!(highlight_threshold > 0.0 && highlight_threshold < 1.0)) {
    throw Error(ErrorCode::kDomain, "highlight threshold must lie in (0, 1)");
  }
  if (!std::isfinite(gamma_epsilon) || !(gamma_epsilon > 0.0)) {
    throw Error(ErrorCode::kDomain, "gamma epsilon must be positive");
  }
}

namespace {

Vec3 channel_gains(const PipelineParams& params, const GainOptions& options) {
  Vec3 g = params.wb_gains;
  if (options.apply_digital_gain) {
    for (double& v : g) v /= params.inverse_digital_gain;
  }
  return g;
}

float gain_sample(float x, double gain, bool clip) {
  double y = x * gain;
  if (clip) y = std::clamp(y, 0.0, 1.0);
  return static_cast<float>(y);
}

}  // namespace

BayerImage apply_wb_gains(const BayerImage& raw, const PipelineParams& params,
                          GainOptions options) {
  const Vec3 g = channel_gains(params, options);
  BayerImage out = raw;
  for (int y = 0; y < raw.height(); ++y) {
    for (int x = 0; x < raw.width(); ++x) {
      out.at(y, x) = gain_sample(raw.at(y, x), g[static_cast<std::size_t>(raw.channel_at(y, x))],
                                 options.clip);
    }
  }
  return out;
}

PlanarImage apply_wb_gains(const PlanarImage& rgb, const PipelineParams& params,
                           GainOptions options) {
  if (rgb.channels() != 3) {
    throw Error(ErrorCode::kDimension, "white balance needs a 3-channel image");
  }
  const Vec3 g = channel_gains(params, options);
  PlanarImage out = rgb;
  for (int c = 0; c < 3; ++c) {
    for (float& v : out.plane(c)) v = gain_sample(v, g[static_cast<std::size_t>(c)], options.clip);
  }
  return out;
}

PlanarImage apply_ccm(const PlanarImage& rgb, const Matrix3& ccm) {
  if (rgb.channels() != 3) {
    throw Error(ErrorCode::kDimension, "CCM needs a 3-channel image");
  }
  PlanarImage out = rgb;
  auto r = rgb.plane(0), g = rgb.plane(1), b = rgb.plane(2);
  auto ro = out.plane(0), go = out.plane(1), bo = out.plane(2);
  for (std::size_t i = 0; i < rgb.plane_size(); ++i) {
    const Vec3 v = multiply(ccm, Vec3{r[i], g[i], b[i]});
    ro[i] = static_cast<float>(v[0]);
    go[i] = static_cast<float>(v[1]);
    bo[i] = static_cast<float>(v[2]);
  }
  return out;
}

double gamma_compress(double x, double epsilon) noexcept {
  return std::pow(std::max(x, epsilon), 1.0 / 2.2);
}

PlanarImage gamma_compress(const PlanarImage& image, double epsilon, bool clamp) {
  PlanarImage out = image;
  for (float& v : out.samples()) {
    double x = v;
    if (clamp) x = std::clamp(x, 0.0, 1.0);
    v = static_cast<float>(gamma_compress(x, epsilon));
  }
  out.set_color_space(ColorSpace::kGammaSrgb);
  return out;
}

double smoothstep(double x) noexcept {
  x = std::clamp(x, 0.0, 1.0);
  return 3.0 * x * x - 2.0 * x * x * x;
}

PlanarImage tone_map_smoothstep(const PlanarImage& image) {
  PlanarImage out = image;
  for (float& v : out.samples()) v = static_cast<float>(smoothstep(v));
  return out;
}

PlanarImage process_raw_to_srgb(const BayerImage& bayer, const PipelineParams& params,
                                ProcessOptions options) {
  params.validate();
  if (bayer.pattern() != params.bayer_pattern) {
    throw Error(ErrorCode::kArgument, "mosaic pattern " + std::string(to_string(bayer.pattern())) +
                                          " does not match params pattern " +
                                          std::string(to_string(params.bayer_pattern)));
  }
  GainOptions gains;
  gains.clip = true;
  gains.apply_digital_gain = options.apply_digital_gain;
  PlanarImage rgb = demosaic_bilinear(apply_wb_gains(bayer, params, gains));
  rgb = apply_ccm(rgb, params.ccm);
  rgb.set_color_space(ColorSpace::kLinearSrgbPrimaries);
  // Tone mapping is the last forward stage: unprocessing inverts it first.
  rgb = gamma_compress(rgb, params.gamma_epsilon, options.clamp_output);
  if (params.tone_map_enabled) rgb = tone_map_smoothstep(rgb);
  return rgb;
}

}  // namespace unraw
