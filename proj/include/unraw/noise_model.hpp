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

#include <string_view>

#include "unraw/image.hpp"
#include "unraw/rng.hpp"

namespace unraw {

/// Variance coefficients of the heteroscedastic Gaussian noise model:
/// y ~ N(x, lambda_read + lambda_shot * x).
struct NoiseParams {
  double lambda_shot = 0.0;
  double lambda_read = 0.0;

  void validate() const;
  friend bool operator==(const NoiseParams&, const NoiseParams&) = default;
};

struct SensorGains {
  double digital_gain = 1.0;
  double analog_gain = 1.0;
  double readout_stddev = 0.0;
};

enum class LogBase { kNatural, kTen };

std::string_view to_string(LogBase base);
LogBase log_base_from_string(std::string_view name);

/// Joint distribution of (lambda_shot, lambda_read): log lambda_shot is
/// uniform between the logs of the shot bounds, and log lambda_read given
/// log lambda_shot is normal around a line in log space.
struct NoiseDistributionConfig {
  double shot_min = 0.0001;
  double shot_max = 0.012;
  double read_slope = 2.18;
  double read_intercept = 1.2;
  double read_residual_stddev = 0.26;
  LogBase log_base = LogBase::kNatural;

  void validate() const;
  friend bool operator==(const NoiseDistributionConfig&,
                         const NoiseDistributionConfig&) = default;
};

/// lambda_read = g_d^2 sigma_r^2, lambda_shot = g_d g_a. The readout stddev
/// may be zero (a noiseless readout); both gains must be positive.
NoiseParams noise_params_from_gains(const SensorGains& gains);

NoiseParams sample_noise_params(const NoiseDistributionConfig& cfg, Rng& rng);

struct NoiseOptions {
  bool clip = true;
};

/// Replaces every sample x with an independent draw from
/// N(x, lambda_read + lambda_shot * x). Row r uses substream r of `rng`, so
/// rows may be generated in any order.
BayerImage apply_shot_read_noise(const BayerImage& signal,
                                 const NoiseParams& params, const Rng& rng,
                                 NoiseOptions options = {});
PlanarImage apply_shot_read_noise(const PlanarImage& signal,
                                  const NoiseParams& params, const Rng& rng,
                                  NoiseOptions options = {});

/// sqrt(lambda_read + lambda_shot * max(x, 0)) per sample.
double noise_stddev(double signal, const NoiseParams& params) noexcept;
PlanarImage noise_stddev_map(const PlanarImage& signal, const NoiseParams& params);
BayerImage noise_stddev_map(const BayerImage& signal, const NoiseParams& params);

}  // namespace unraw
