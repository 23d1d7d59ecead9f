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
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "unraw/forward_pipeline.hpp"
#include "unraw/image.hpp"

namespace unraw {

/// PSNR of identical inputs. Checked for explicitly, never produced by a
/// division by zero.
inline constexpr double kPsnrIdentical = std::numeric_limits<double>::infinity();

double mean_squared_error(std::span<const float> a, std::span<const float> b);
double psnr(std::span<const float> a, std::span<const float> b, double peak = 1.0);
double psnr(const PlanarImage& a, const PlanarImage& b, double peak = 1.0);

struct SsimOptions {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double peak = 1.0;
};

/// Mean structural similarity over every position where the Gaussian window
/// fits inside the image, computed per channel and averaged.
double ssim(const PlanarImage& a, const PlanarImage& b, SsimOptions options = {});

double dssim(double ssim_value) noexcept;

/// 1 - RMSE(best) / RMSE(ref), with RMSE taken from PSNR.
double psnr_to_relative_rmse_reduction(double psnr_ref, double psnr_best) noexcept;

/// 1 - DSSIM(best) / DSSIM(ref). Empty when DSSIM(ref) is zero and
/// DSSIM(best) is not.
std::optional<double> dssim_relative_reduction(double ssim_ref, double ssim_best) noexcept;

/// Mean |process(a) - process(b)| on the unclamped loss path, tone map off.
double srgb_l1_loss(const BayerImage& a, const BayerImage& b,
                    const PipelineParams& params);

struct MetricReport {
  double psnr_raw = 0.0;
  double ssim_raw = 0.0;
  double psnr_srgb = 0.0;
  double ssim_srgb = 0.0;
};

/// Raw metrics on the packed four-plane images, sRGB metrics on both
/// mosaics rendered with `params`.
MetricReport evaluate_raw_pair(const BayerImage& estimate, const BayerImage& reference,
                               const PipelineParams& params);

std::string report_to_json(const MetricReport& report);
std::string report_to_text(const MetricReport& report);

struct ChannelHistogram {
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  double mean = 0.0;
  double median = 0.0;

  std::vector<double> normalized() const;
};

/// Per-channel histograms over [0, 1]. Out-of-range samples land in the end
/// bins. Counts are exact integers, so merge order does not matter.
class HistogramAccumulator {
 public:
  HistogramAccumulator(int channels, int bins);

  void add(const PlanarImage& image);
  void merge(const HistogramAccumulator& other);

  int channels() const noexcept { return channels_; }
  int bins() const noexcept { return bins_; }
  std::uint64_t image_count() const noexcept { return images_; }

  /// Throws kArgument if no image has been added.
  std::vector<ChannelHistogram> finish() const;

  /// Columns: channel,bin,lo,hi,count,fraction.
  std::string to_csv() const;
  /// Columns: channel,pixels,mean,median.
  std::string summary_csv() const;

 private:
  static constexpr int kFineBins = 1 << 16;

  int channels_;
  int bins_;
  std::uint64_t images_ = 0;
  std::vector<std::vector<std::uint64_t>> counts_;
  // Fine histogram for the median; running sums for the mean.
  std::vector<std::vector<std::uint64_t>> fine_;
  std::vector<double> sums_;
};

}  // namespace unraw
