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

#include "unraw/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "unraw/core_image.hpp"
#include "unraw/error.hpp"
#include "unraw/synthesis.hpp"

namespace unraw {

double mean_squared_error(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size() || a.empty()) {
    throw Error(ErrorCode::kDimension, "inputs must be non-empty and the same size");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    acc += d * d;
  }
  return acc / static_cast<double>(a.size());
}

double psnr(std::span<const float> a, std::span<const float> b, double peak) {
  const double mse = mean_squared_error(a, b);
  if (mse == 0.0) return kPsnrIdentical;
  return 10.0 * std::log10(peak * peak / mse);
}

double psnr(const PlanarImage& a, const PlanarImage& b, double peak) {
  if (!a.same_geometry(b)) throw Error(ErrorCode::kDimension, "image geometries differ");
  return psnr(a.samples(), b.samples(), peak);
}

namespace {

// Separable filter keeping only positions where the window fits.
std::vector<double> filter_valid(const std::vector<double>& src, int h, int w,
                                 const std::vector<double>& taps) {
  const int n = static_cast<int>(taps.size());
  const int ow = w - n + 1;
  const int oh = h - n + 1;
  std::vector<double> tmp(static_cast<std::size_t>(h) * ow);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += taps[k] * src[static_cast<std::size_t>(y) * w + x + k];
      tmp[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(oh) * ow);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += taps[k] * tmp[static_cast<std::size_t>(y + k) * ow + x];
      out[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  return out;
}

}  // namespace

double ssim(const PlanarImage& a, const PlanarImage& b, SsimOptions options) {
  if (!a.same_geometry(b)) throw Error(ErrorCode::kDimension, "image geometries differ");
  if (options.window < 1 || options.window % 2 == 0) {
    throw Error(ErrorCode::kArgument, "SSIM window must be odd and positive");
  }
  const int h = a.height();
  const int w = a.width();
  if (h < options.window || w < options.window) {
    throw Error(ErrorCode::kDimension, "image is smaller than the SSIM window");
  }
  const auto taps = gaussian_kernel(options.sigma, options.window / 2);
  const double c1 = (options.k1 * options.peak) * (options.k1 * options.peak);
  const double c2 = (options.k2 * options.peak) * (options.k2 * options.peak);

  const std::size_t n = a.plane_size();
  std::vector<double> pa(n), pb(n), paa(n), pbb(n), pab(n);
  double total = 0.0;
  for (int c = 0; c < a.channels(); ++c) {
    auto sa = a.plane(c);
    auto sb = b.plane(c);
    for (std::size_t i = 0; i < n; ++i) {
      pa[i] = sa[i];
      pb[i] = sb[i];
      paa[i] = pa[i] * pa[i];
      pbb[i] = pb[i] * pb[i];
      pab[i] = pa[i] * pb[i];
    }
    const auto mu_a = filter_valid(pa, h, w, taps);
    const auto mu_b = filter_valid(pb, h, w, taps);
    const auto e_aa = filter_valid(paa, h, w, taps);
    const auto e_bb = filter_valid(pbb, h, w, taps);
    const auto e_ab = filter_valid(pab, h, w, taps);
    double sum = 0.0;
    for (std::size_t i = 0; i < mu_a.size(); ++i) {
      const double var_a = e_aa[i] - mu_a[i] * mu_a[i];
      const double var_b = e_bb[i] - mu_b[i] * mu_b[i];
      const double cov = e_ab[i] - mu_a[i] * mu_b[i];
      const double num = (2.0 * mu_a[i] * mu_b[i] + c1) * (2.0 * cov + c2);
      const double den = (mu_a[i] * mu_a[i] + mu_b[i] * mu_b[i] + c1) * (var_a + var_b + c2);
      sum += num / den;
    }
    total += sum / static_cast<double>(mu_a.size());
  }
  return total / a.channels();
}

double dssim(double ssim_value) noexcept { return (1.0 - ssim_value) / 2.0; }

double psnr_to_relative_rmse_reduction(double psnr_ref, double psnr_best) noexcept {
  // RMSE is proportional to sqrt(10^(-PSNR/10)).
  return 1.0 - std::pow(10.0, -(psnr_best - psnr_ref) / 20.0);
}

std::optional<double> dssim_relative_reduction(double ssim_ref, double ssim_best) noexcept {
  const double ref = dssim(ssim_ref);
  const double best = dssim(ssim_best);
  if (ref == 0.0) {
    if (best == 0.0) return 0.0;
    return std::nullopt;
  }
  return 1.0 - best / ref;
}

double srgb_l1_loss(const BayerImage& a, const BayerImage& b, const PipelineParams& params) {
  if (a.height() != b.height() || a.width() != b.width() || a.pattern() != b.pattern()) {
    throw Error(ErrorCode::kDimension, "raw images differ in geometry or pattern");
  }
  PipelineParams p = params;
  p.tone_map_enabled = false;
  ProcessOptions loss_path;
  loss_path.apply_digital_gain = false;
  loss_path.clamp_output = false;
  const PlanarImage pa = process_raw_to_srgb(a, p, loss_path);
  const PlanarImage pb = process_raw_to_srgb(b, p, loss_path);
  double acc = 0.0;
  auto sa = pa.samples();
  auto sb = pb.samples();
  for (std::size_t i = 0; i < sa.size(); ++i) {
    acc += std::abs(static_cast<double>(sa[i]) - static_cast<double>(sb[i]));
  }
  return acc / static_cast<double>(sa.size());
}

MetricReport evaluate_raw_pair(const BayerImage& estimate, const BayerImage& reference,
                               const PipelineParams& params) {
  MetricReport r;
  const PlanarImage ea = pack_bayer_planes(estimate);
  const PlanarImage ra = pack_bayer_planes(reference);
  r.psnr_raw = psnr(ea, ra);
  r.ssim_raw = ssim(ea, ra);
  const PlanarImage es = process_raw_to_srgb(estimate, params);
  const PlanarImage rs = process_raw_to_srgb(reference, params);
  r.psnr_srgb = psnr(es, rs);
  r.ssim_srgb = ssim(es, rs);
  return r;
}

namespace {

nlohmann::json psnr_json(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

}  // namespace

std::string report_to_json(const MetricReport& report) {
  nlohmann::json j;
  j["psnr_raw"] = psnr_json(report.psnr_raw);
  j["ssim_raw"] = report.ssim_raw;
  j["psnr_srgb"] = psnr_json(report.psnr_srgb);
  j["ssim_srgb"] = report.ssim_srgb;
  return j.dump(2);
}

std::string report_to_text(const MetricReport& report) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(4);
  os << "domain  psnr_db    ssim\n";
  os << "raw     " << report.psnr_raw << "  " << report.ssim_raw << "\n";
  os << "srgb    " << report.psnr_srgb << "  " << report.ssim_srgb << "\n";
  return os.str();
}

std::vector<double> ChannelHistogram::normalized() const {
  std::vector<double> out(counts.size(), 0.0);
  if (total == 0) return out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return out;
}

HistogramAccumulator::HistogramAccumulator(int channels, int bins)
    : channels_(channels), bins_(bins) {
  if (channels < 1) throw Error(ErrorCode::kArgument, "histogram needs at least one channel");
  if (bins < 2) throw Error(ErrorCode::kArgument, "histogram needs at least 2 bins");
  counts_.assign(static_cast<std::size_t>(channels), std::vector<std::uint64_t>(bins, 0));
  fine_.assign(static_cast<std::size_t>(channels), std::vector<std::uint64_t>(kFineBins, 0));
  sums_.assign(static_cast<std::size_t>(channels), 0.0);
}

namespace {

std::size_t bin_of(double v, int bins) {
  v = std::clamp(v, 0.0, 1.0);
  return static_cast<std::size_t>(std::min(static_cast<int>(v * bins), bins - 1));
}

}  // namespace

void HistogramAccumulator::add(const PlanarImage& image) {
  if (image.channels() != channels_) {
    throw Error(ErrorCode::kDimension, "histogram channel count mismatch");
  }
  for (int c = 0; c < channels_; ++c) {
    auto& counts = counts_[static_cast<std::size_t>(c)];
    auto& fine = fine_[static_cast<std::size_t>(c)];
    double sum = 0.0;
    for (float v : image.plane(c)) {
      ++counts[bin_of(v, bins_)];
      ++fine[bin_of(v, kFineBins)];
      sum += v;
    }
    sums_[static_cast<std::size_t>(c)] += sum;
  }
  ++images_;
}

void HistogramAccumulator::merge(const HistogramAccumulator& other) {
  if (other.channels_ != channels_ || other.bins_ != bins_) {
    throw Error(ErrorCode::kArgument, "cannot merge histograms of different shape");
  }
  for (std::size_t c = 0; c < counts_.size(); ++c) {
    for (std::size_t i = 0; i < counts_[c].size(); ++i) counts_[c][i] += other.counts_[c][i];
    for (std::size_t i = 0; i < fine_[c].size(); ++i) fine_[c][i] += other.fine_[c][i];
    sums_[c] += other.sums_[c];
  }
  images_ += other.images_;
}

std::vector<ChannelHistogram> HistogramAccumulator::finish() const {
  if (images_ == 0) throw Error(ErrorCode::kArgument, "histogram corpus is empty");
  std::vector<ChannelHistogram> out(counts_.size());
  for (std::size_t c = 0; c < counts_.size(); ++c) {
    auto& h = out[c];
    h.counts = counts_[c];
    for (auto n : h.counts) h.total += n;
    h.mean = sums_[c] / static_cast<double>(h.total);
    const std::uint64_t half = (h.total + 1) / 2;
    std::uint64_t cumulative = 0;
    for (std::size_t i = 0; i < fine_[c].size(); ++i) {
      cumulative += fine_[c][i];
      if (cumulative >= half) {
        h.median = (static_cast<double>(i) + 0.5) / kFineBins;
        break;
      }
    }
  }
  return out;
}

std::string HistogramAccumulator::to_csv() const {
  const auto hists = finish();
  std::ostringstream os;
  os.precision(10);
  os << "channel,bin,lo,hi,count,fraction\n";
  for (std::size_t c = 0; c < hists.size(); ++c) {
    const auto fractions = hists[c].normalized();
    for (int i = 0; i < bins_; ++i) {
      os << c << ',' << i << ',' << static_cast<double>(i) / bins_ << ','
         << static_cast<double>(i + 1) / bins_ << ',' << hists[c].counts[i] << ','
         << fractions[i] << '\n';
    }
  }
  return os.str();
}

std::string HistogramAccumulator::summary_csv() const {
  const auto hists = finish();
  std::ostringstream os;
  os.precision(10);
  os << "channel,pixels,mean,median\n";
  for (std::size_t c = 0; c < hists.size(); ++c) {
    os << c << ',' << hists[c].total << ',' << hists[c].mean << ',' << hists[c].median << '\n';
  }
  return os.str();
}

}  // namespace unraw
