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

#include "unraw/noise_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "unraw/error.hpp"

namespace unraw {

void NoiseParams::validate() const {
  if (!std::isfinite(lambda_shot) || !std::isfinite(lambda_read) ||
      !(lambda_shot > 0.0) || !(lambda_read >= 0.0)) {
    throw Error(ErrorCode::kDomain,
                "noise parameters need lambda_shot > 0 and lambda_read >= 0");
  }
}

std::string_view to_string(LogBase base) {
  return base == LogBase::kTen ? "10" : "e";
}

LogBase log_base_from_string(std::string_view name) {
  if (name == "e") return LogBase::kNatural;
  if (name == "10") return LogBase::kTen;
  throw Error(ErrorCode::kConfig, "log base must be \"e\" or \"10\", got '" +
                                      std::string(name) + "'");
}

void NoiseDistributionConfig::validate() const {
  const bool finite = std::isfinite(shot_min) && std::isfinite(shot_max) &&
                      std::isfinite(read_slope) && std::isfinite(read_intercept) &&
                      std::isfinite(read_residual_stddev);
  if (!finite || !(shot_min > 0.0) || !(shot_min < shot_max)) {
    throw Error(ErrorCode::kConfig, "noise config needs 0 < shot_min < shot_max");
  }
  if (!(read_residual_stddev > 0.0)) {
    throw Error(ErrorCode::kConfig, "noise config needs a positive read residual stddev");
  }
}

NoiseParams noise_params_from_gains(const SensorGains& gains) {
  if (!(gains.digital_gain > 0.0) || !(gains.analog_gain > 0.0) ||
      !(gains.readout_stddev >= 0.0) || !std::isfinite(gains.digital_gain) ||
      !std::isfinite(gains.analog_gain) || !std::isfinite(gains.readout_stddev)) {
    throw Error(ErrorCode::kDomain, "sensor gains must be positive and finite");
  }
  NoiseParams p;
  p.lambda_read = gains.digital_gain * gains.digital_gain * gains.readout_stddev *
                  gains.readout_stddev;
  p.lambda_shot = gains.digital_gain * gains.analog_gain;
  return p;
}

NoiseParams sample_noise_params(const NoiseDistributionConfig& cfg, Rng& rng) {
  cfg.validate();
  const bool ten = cfg.log_base == LogBase::kTen;
  auto to_log = [ten](double v) { return ten ? std::log10(v) : std::log(v); };
  auto from_log = [ten](double v) { return ten ? std::pow(10.0, v) : std::exp(v); };

  const double log_shot = rng.uniform(to_log(cfg.shot_min), to_log(cfg.shot_max));
  const double log_read =
      rng.normal(cfg.read_slope * log_shot + cfg.read_intercept, cfg.read_residual_stddev);
  NoiseParams p;
  p.lambda_shot = std::clamp(from_log(log_shot), cfg.shot_min, cfg.shot_max);
  p.lambda_read = from_log(log_read);
  return p;
}

double noise_stddev(double signal, const NoiseParams& params) noexcept {
  return std::sqrt(params.lambda_read + params.lambda_shot * std::max(signal, 0.0));
}

namespace {

void add_noise_row(std::span<const float> in, std::span<float> out,
                   const NoiseParams& params, Rng row_rng, bool clip) {
  for (std::size_t i = 0; i < in.size(); ++i) {
    const double x = in[i];
    double y = row_rng.normal(x, noise_stddev(x, params));
    if (clip) y = std::clamp(y, 0.0, 1.0);
    out[i] = static_cast<float>(y);
  }
}

}  // namespace

BayerImage apply_shot_read_noise(const BayerImage& signal, const NoiseParams& params,
                                 const Rng& rng, NoiseOptions options) {
  params.validate();
  BayerImage out = signal;
  const auto w = static_cast<std::size_t>(signal.width());
  for (int y = 0; y < signal.height(); ++y) {
    const auto offset = static_cast<std::size_t>(y) * w;
    add_noise_row(signal.samples().subspan(offset, w), out.samples().subspan(offset, w),
                  params, rng.substream(static_cast<std::uint64_t>(y)), options.clip);
  }
  return out;
}

PlanarImage apply_shot_read_noise(const PlanarImage& signal, const NoiseParams& params,
                                  const Rng& rng, NoiseOptions options) {
  params.validate();
  PlanarImage out = signal;
  const auto w = static_cast<std::size_t>(signal.width());
  const auto rows = static_cast<std::size_t>(signal.channels()) *
                    static_cast<std::size_t>(signal.height());
  for (std::size_t row = 0; row < rows; ++row) {
    add_noise_row(signal.samples().subspan(row * w, w), out.samples().subspan(row * w, w),
                  params, rng.substream(row), options.clip);
  }
  return out;
}

PlanarImage noise_stddev_map(const PlanarImage& signal, const NoiseParams& params) {
  PlanarImage out = signal;
  auto dst = out.samples();
  auto src = signal.samples();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = static_cast<float>(noise_stddev(src[i], params));
  }
  return out;
}

BayerImage noise_stddev_map(const BayerImage& signal, const NoiseParams& params) {
  BayerImage out = signal;
  auto dst = out.samples();
  auto src = signal.samples();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = static_cast<float>(noise_stddev(src[i], params));
  }
  return out;
}

}  // namespace unraw
