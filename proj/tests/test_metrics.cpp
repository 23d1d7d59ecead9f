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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "test_util.hpp"
#include "unraw/core_image.hpp"
#include "unraw/error.hpp"
#include "unraw/metrics.hpp"

namespace unraw {
namespace {

using testing::random_bayer;
using testing::random_image;

PlanarImage constant(int c, int h, int w, float v) {
  PlanarImage img(c, h, w);
  for (auto& s : img.samples()) s = v;
  return img;
}

TEST(Psnr, IdenticalIsSentinel) {
  const PlanarImage a = random_image(3, 8, 8, 1);
  EXPECT_EQ(psnr(a, a), kPsnrIdentical);
  EXPECT_TRUE(std::isinf(psnr(a, a)));
}

TEST(Psnr, KnownValues) {
  EXPECT_NEAR(psnr(constant(1, 8, 8, 0.2f), constant(1, 8, 8, 0.3f)), 20.0, 1e-5);
  // Alternating +-0.01 offsets: MSE 1e-4.
  PlanarImage a = constant(1, 4, 4, 0.5f);
  PlanarImage b = a;
  for (std::size_t i = 0; i < b.samples().size(); ++i) {
    b.samples()[i] += (i % 2 ? 0.01f : -0.01f);
  }
  EXPECT_NEAR(psnr(a, b), 40.0, 1e-4);
}

TEST(Psnr, SymmetricAndShapeChecked) {
  const PlanarImage a = random_image(3, 8, 8, 2);
  const PlanarImage b = random_image(3, 8, 8, 3);
  EXPECT_EQ(psnr(a, b), psnr(b, a));
  EXPECT_THROW(psnr(a, random_image(3, 8, 6, 4)), Error);
}

TEST(Ssim, SelfIsOneAndSymmetric) {
  const PlanarImage a = random_image(3, 24, 24, 5);
  const PlanarImage b = random_image(3, 24, 24, 6);
  EXPECT_EQ(ssim(a, a), 1.0);
  EXPECT_NEAR(ssim(a, b), ssim(b, a), 1e-12);
  EXPECT_GE(ssim(a, b), -1.0);
  EXPECT_LE(ssim(a, b), 1.0);
}

TEST(Ssim, AntiCorrelatedBinary) {
  std::mt19937_64 gen(7);
  PlanarImage a(1, 32, 32);
  for (auto& v : a.samples()) v = (gen() & 1) ? 1.0f : 0.0f;
  PlanarImage b = a;
  for (auto& v : b.samples()) v = 1.0f - v;
  EXPECT_LT(ssim(a, b), 0.1);
}

TEST(Ssim, ConstantsMatchLuminanceTerm) {
  const double mu_a = 0.4;
  const double mu_b = 0.5;
  const double c1 = 0.01 * 0.01;
  const double want = (2 * mu_a * mu_b + c1) / (mu_a * mu_a + mu_b * mu_b + c1);
  EXPECT_NEAR(ssim(constant(3, 16, 16, 0.4f), constant(3, 16, 16, 0.5f)), want, 1e-6);
}

TEST(Ssim, RejectsShapeMismatchAndTinyImages) {
  EXPECT_THROW(ssim(constant(1, 16, 16, 0), constant(1, 16, 15, 0)), Error);
  EXPECT_THROW(ssim(constant(1, 8, 8, 0), constant(1, 8, 8, 0)), Error);
}

TEST(Dssim, Values) {
  EXPECT_EQ(dssim(1.0), 0.0);
  EXPECT_EQ(dssim(0.0), 0.5);
  EXPECT_NEAR(dssim(0.9824), 0.0088, 1e-12);
}

TEST(Reduction, Psnr) {
  EXPECT_NEAR(psnr_to_relative_rmse_reduction(47.56, 48.89), 0.142, 0.001);
  EXPECT_NEAR(psnr_to_relative_rmse_reduction(38.06, 40.35), 0.232, 0.001);
  EXPECT_EQ(psnr_to_relative_rmse_reduction(40.0, 40.0), 0.0);
}

TEST(Reduction, Dssim) {
  EXPECT_NEAR(*dssim_relative_reduction(0.9767, 0.9824), 0.245, 0.002);
  EXPECT_NEAR(*dssim_relative_reduction(0.9384, 0.9641), 0.417, 0.003);
  EXPECT_EQ(*dssim_relative_reduction(0.95, 0.95), 0.0);
  EXPECT_FALSE(dssim_relative_reduction(1.0, 0.9).has_value());
  EXPECT_EQ(*dssim_relative_reduction(1.0, 1.0), 0.0);
}

TEST(SrgbL1, Properties) {
  const BayerImage a = random_bayer(BayerPattern::kRggb, 16, 16, 8);
  const BayerImage b = random_bayer(BayerPattern::kRggb, 16, 16, 9);
  const PipelineParams p;
  EXPECT_EQ(srgb_l1_loss(a, a, p), 0.0);
  const double loss = srgb_l1_loss(a, b, p);
  EXPECT_GT(loss, 0.0);
  EXPECT_EQ(loss, srgb_l1_loss(a, b, p));

  const PlanarImage ga = gamma_compress(demosaic_bilinear(a), kGammaEpsilon, false);
  const PlanarImage gb = gamma_compress(demosaic_bilinear(b), kGammaEpsilon, false);
  double sum = 0.0;
  for (std::size_t i = 0; i < ga.samples().size(); ++i) {
    sum += std::abs(static_cast<double>(ga.samples()[i]) - gb.samples()[i]);
  }
  EXPECT_NEAR(loss, sum / ga.samples().size(), 1e-9);
}

TEST(Report, RawPairAndFormatting) {
  const BayerImage a = random_bayer(BayerPattern::kRggb, 32, 32, 10);
  const MetricReport same = evaluate_raw_pair(a, a, PipelineParams{});
  EXPECT_TRUE(std::isinf(same.psnr_raw));
  EXPECT_TRUE(std::isinf(same.psnr_srgb));
  EXPECT_EQ(same.ssim_raw, 1.0);
  const std::string json = report_to_json(same);
  EXPECT_NE(json.find("\"inf\""), std::string::npos);
  const std::string text = report_to_text(same);
  EXPECT_NE(text.find("srgb"), std::string::npos);
  EXPECT_NE(text.find("inf"), std::string::npos);
}

TEST(Histogram, ConstantImageOccupiesOneBin) {
  HistogramAccumulator acc(3, 10);
  acc.add(constant(3, 4, 5, 0.33f));
  const auto h = acc.finish();
  ASSERT_EQ(h.size(), 3u);
  for (const auto& ch : h) {
    EXPECT_EQ(ch.total, 20u);
    int occupied = 0;
    for (auto n : ch.counts) occupied += n > 0 ? 1 : 0;
    EXPECT_EQ(occupied, 1);
    EXPECT_EQ(ch.counts[3], 20u);
    EXPECT_NEAR(ch.mean, 0.33, 1e-6);
    EXPECT_NEAR(ch.median, 0.33, 1e-4);
  }
}

TEST(Histogram, CountsSumToPixelsAndMergeMatches) {
  HistogramAccumulator all(3, 16);
  HistogramAccumulator part_a(3, 16);
  HistogramAccumulator part_b(3, 16);
  for (std::uint64_t s = 0; s < 6; ++s) {
    const PlanarImage img = random_image(3, 7, 9, s);
    all.add(img);
    (s % 2 ? part_a : part_b).add(img);
  }
  part_a.merge(part_b);
  const auto h = all.finish();
  const auto m = part_a.finish();
  for (int c = 0; c < 3; ++c) {
    std::uint64_t sum = 0;
    for (auto n : h[c].counts) sum += n;
    EXPECT_EQ(sum, 6u * 63u);
    EXPECT_EQ(h[c].counts, m[c].counts);
    double total = 0.0;
    for (double f : h[c].normalized()) total += f;
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(Histogram, EmptyCorpusFlagged) {
  HistogramAccumulator acc(3, 8);
  EXPECT_THROW(acc.finish(), Error);
  EXPECT_THROW(HistogramAccumulator(3, 1), Error);
}

TEST(Histogram, CsvSchema) {
  HistogramAccumulator acc(3, 4);
  acc.add(constant(3, 2, 2, 0.9f));
  std::istringstream csv(acc.to_csv());
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "channel,bin,lo,hi,count,fraction");
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  EXPECT_EQ(rows, 12);
  std::istringstream summary(acc.summary_csv());
  std::getline(summary, header);
  EXPECT_EQ(header, "channel,pixels,mean,median");
}

}  // namespace
}  // namespace unraw
