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
#include <numeric>
#include <vector>

#include "test_util.hpp"
#include "unraw/core_image.hpp"
#include "unraw/error.hpp"
#include "unraw/forward_pipeline.hpp"
#include "unraw/profile.hpp"
#include "unraw/unprocess.hpp"

namespace unraw {
namespace {

using testing::smooth_image;

TEST(InverseSmoothstep, KnownValues) {
  EXPECT_NEAR(inverse_smoothstep(0.5), 0.5, 1e-15);
  EXPECT_NEAR(inverse_smoothstep(0.0), 0.0, 1e-15);
  EXPECT_NEAR(inverse_smoothstep(1.0), 1.0, 1e-15);
  EXPECT_NEAR(inverse_smoothstep(0.15625), 0.25, 1e-9);
  EXPECT_EQ(inverse_smoothstep(2.0), inverse_smoothstep(1.0));
}

TEST(InverseSmoothstep, IdentityOnGrid) {
  for (int i = 0; i <= 10000; ++i) {
    const double y = i / 10000.0;
    ASSERT_NEAR(smoothstep(inverse_smoothstep(y)), y, 1e-6);
  }
}

TEST(GammaDecompress, KnownValues) {
  EXPECT_EQ(gamma_decompress(1.0), 1.0);
  EXPECT_NEAR(gamma_decompress(0.72974), 0.5, 1e-4);
  EXPECT_NEAR(gamma_decompress(0.0), std::pow(1e-8, 2.2), 1e-30);
  EXPECT_NEAR(gamma_decompress(0.0), 2.5e-18, 0.1e-18);
}

TEST(GammaDecompress, IdentityOnGrid) {
  const double floor = std::pow(kGammaEpsilon, 1.0 / 2.2);
  for (int i = 0; i <= 10000; ++i) {
    const double y = std::max(i / 10000.0, floor);
    ASSERT_NEAR(gamma_compress(gamma_decompress(y)), y, 1e-6);
  }
}

CcmSet four_ccms() { return default_profile().unprocess.ccm_set; }

TEST(SampleCcm, SingleMatrixReturnedExactly) {
  CcmSet set;
  set.matrices = {{"only", {{{1.5, -0.3, -0.2}, {-0.1, 1.2, -0.1}, {0.0, -0.4, 1.4}}}}};
  Rng rng(1);
  const CcmSample s = sample_ccm(set, rng);
  EXPECT_EQ(s.matrix, set.matrices[0].matrix);
  ASSERT_EQ(s.weights.size(), 1u);
  EXPECT_EQ(s.weights[0], 1.0);
}

TEST(SampleCcm, VertexWeightsGiveFirstMatrix) {
  const CcmSet set = four_ccms();
  EXPECT_EQ(combine_ccms(set, {1.0, 0.0, 0.0, 0.0}), set.matrices[0].matrix);
  EXPECT_EQ(combine_ccms(set, {0.0, 0.0, 1.0, 0.0}), set.matrices[2].matrix);
}

TEST(SampleCcm, IdentitySetStaysIdentity) {
  CcmSet set;
  set.matrices = {{"a", kIdentity3}, {"b", kIdentity3}, {"c", kIdentity3}};
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const Matrix3 m = sample_ccm(set, rng).matrix;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) ASSERT_NEAR(m[r][c], r == c ? 1.0 : 0.0, 1e-15);
    }
  }
}

TEST(SampleCcm, WeightsOnSimplex) {
  const CcmSet set = four_ccms();
  Rng rng(3);
  std::vector<double> mean(4, 0.0);
  constexpr int kDraws = 20000;
  for (int i = 0; i < kDraws; ++i) {
    const CcmSample s = sample_ccm(set, rng);
    ASSERT_EQ(s.weights.size(), 4u);
    for (double w : s.weights) ASSERT_GE(w, 0.0);
    ASSERT_NEAR(std::accumulate(s.weights.begin(), s.weights.end(), 0.0), 1.0, 1e-12);
    for (int k = 0; k < 4; ++k) mean[k] += s.weights[k] / kDraws;
  }
  // Uniform on the simplex gives each weight expectation 1/4.
  for (double m : mean) EXPECT_NEAR(m, 0.25, 0.01);
}

TEST(SampleCcm, EmptySetRejected) {
  Rng rng(4);
  try {
    sample_ccm(CcmSet{}, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
  }
}

TEST(SampleCcm, DeterministicPerSeed) {
  Rng a(8);
  Rng b(8);
  EXPECT_EQ(sample_ccm(four_ccms(), a).weights, sample_ccm(four_ccms(), b).weights);
}

TEST(WhiteBalanceSampling, RangesMeansIndependence) {
  UnprocessConfig cfg;
  Rng rng(5);
  constexpr int kDraws = 100000;
  double sr = 0, sb = 0, srr = 0, sbb = 0, srb = 0;
  for (int i = 0; i < kDraws; ++i) {
    const Vec3 g = sample_wb_gains(cfg, rng);
    ASSERT_GE(g[0], 1.9);
    ASSERT_LE(g[0], 2.4);
    ASSERT_EQ(g[1], 1.0);
    ASSERT_GE(g[2], 1.5);
    ASSERT_LE(g[2], 1.9);
    sr += g[0];
    sb += g[2];
    srr += g[0] * g[0];
    sbb += g[2] * g[2];
    srb += g[0] * g[2];
  }
  const double mr = sr / kDraws;
  const double mb = sb / kDraws;
  EXPECT_NEAR(mr, 2.15, 0.01);
  EXPECT_NEAR(mb, 1.7, 0.01);
  const double cov = srb / kDraws - mr * mb;
  const double r = cov / std::sqrt((srr / kDraws - mr * mr) * (sbb / kDraws - mb * mb));
  EXPECT_LT(std::abs(r), 0.02);
}

TEST(DigitalGainSampling, Moments) {
  UnprocessConfig cfg;
  Rng rng(6);
  constexpr int kDraws = 100000;
  double s = 0, ss = 0;
  int inside = 0;
  for (int i = 0; i < kDraws; ++i) {
    const double g = sample_inverse_digital_gain(cfg, rng);
    ASSERT_GT(g, 0.0);
    ASSERT_LE(g, 1.1);
    s += g;
    ss += g * g;
    inside += (g >= 0.5 && g <= 1.1) ? 1 : 0;
  }
  const double mean = s / kDraws;
  EXPECT_NEAR(mean, 0.8, 0.005);
  EXPECT_NEAR(std::sqrt(ss / kDraws - mean * mean), 0.1, 0.005);
  EXPECT_GE(inside, 99000);
}

TEST(DigitalGainSampling, ImpossibleBoundsRejected) {
  UnprocessConfig cfg;
  cfg.inverse_digital_gain_mean = 50.0;
  cfg.inverse_digital_gain_stddev = 0.1;
  Rng rng(7);
  EXPECT_THROW(sample_inverse_digital_gain(cfg, rng), Error);
}

TEST(SafeInverseGain, KnownValues) {
  EXPECT_EQ(safe_inverse_gain(0.5, 2.0, 0.9), 0.25);
  EXPECT_EQ(safe_inverse_gain(1.0, 1.25, 0.9), 1.0);
  EXPECT_NEAR(safe_inverse_gain(0.95, 2.0, 0.9), 0.59375, 1e-9);
  for (double g : {0.5, 1.0, 1.25, 2.0, 3.0}) EXPECT_EQ(safe_inverse_gain(1.0, g, 0.9), 1.0);
}

TEST(SafeInverseGain, LinearBranches) {
  for (int i = 0; i <= 900; ++i) {
    const double x = i / 1000.0;
    ASSERT_EQ(safe_inverse_gain(x, 1.7, 0.9), x / 1.7);
  }
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0;
    ASSERT_EQ(safe_inverse_gain(x, 0.8, 0.9), std::min(x / 0.8, 1.0));
  }
}

TEST(SafeInverseGain, ContinuousAndSmoothAtKnee) {
  const double t = 0.9;
  for (double g : {0.5, 1.25, 2.0, 3.0}) {
    const double d = 1e-6;
    EXPECT_LT(std::abs(safe_inverse_gain(t + d, g, t) - safe_inverse_gain(t - d, g, t)), 1e-5);
    const double h = 1e-6;
    const double left = (safe_inverse_gain(t, g, t) - safe_inverse_gain(t - h, g, t)) / h;
    const double right = (safe_inverse_gain(t + h, g, t) - safe_inverse_gain(t, g, t)) / h;
    EXPECT_NEAR(right, left, 1e-3 * std::abs(left)) << "g=" << g;
  }
}

TEST(SafeInverseGain, MonotoneOnGrid) {
  for (double g = 0.5; g <= 3.0; g += 0.25) {
    double prev = -1.0;
    for (int i = 0; i < 10000; ++i) {
      const double v = safe_inverse_gain(i / 9999.0, g, 0.9);
      ASSERT_GE(v, prev) << "g=" << g;
      prev = v;
    }
  }
}

TEST(SafeInverseGain, NonPositiveGainRejected) {
  try {
    safe_inverse_gain(0.5, 0.0, 0.9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDomain);
  }
  EXPECT_THROW(safe_inverse_gain(0.5, -1.0, 0.9), Error);
}

TEST(InverseGains, Examples) {
  PlanarImage rgb(3, 1, 1);
  rgb.at(0, 0, 0) = 0.4f;
  rgb.at(1, 0, 0) = 0.3f;
  rgb.at(2, 0, 0) = 1.0f;
  EXPECT_EQ(apply_inverse_gains(rgb, {1, 1, 1}, 1.0, 0.9), rgb);
  const PlanarImage out = apply_inverse_gains(rgb, {2.0, 1.0, 1.8}, 0.8, 0.9);
  EXPECT_NEAR(out.at(0, 0, 0), 0.16, 1e-7);
  EXPECT_NEAR(out.at(1, 0, 0), 0.3 * 0.8, 1e-7);
  EXPECT_EQ(out.at(2, 0, 0), 1.0f);
}

TEST(GainRatio, Examples) {
  EXPECT_EQ(estimate_gain_ratio(0.3, 0.3), 1.0);
  EXPECT_NEAR(estimate_gain_ratio(0.25, 0.20), 1.25, 1e-15);
  EXPECT_NEAR(estimate_gain_ratio(0.25, 0.20 * 3.0), 1.25 / 3.0, 1e-15);
  EXPECT_THROW(estimate_gain_ratio(0.0, 1.0), Error);
  EXPECT_THROW(estimate_gain_ratio(1.0, -1.0), Error);
}

TEST(Unprocess, DegenerateConfigIsGammaAndToneInverse) {
  UnprocessConfig cfg;
  cfg.ccm_set.matrices = {{"identity", kIdentity3}};
  cfg.red_gain = {1.0, 1.0};
  cfg.blue_gain = {1.0, 1.0};
  cfg.inverse_digital_gain_mean = 1.0;
  cfg.inverse_digital_gain_stddev = 0.0;
  const PlanarImage srgb = smooth_image(16, 16, 3);
  Rng rng(9);
  const UnprocessResult r = unprocess(srgb, cfg, rng);
  for (int c = 0; c < 3; ++c) {
    for (int y = 0; y < 16; ++y) {
      for (int x = 0; x < 16; ++x) {
        const double want = gamma_decompress(inverse_smoothstep(srgb.at(c, y, x)));
        ASSERT_NEAR(r.raw_rgb.at(c, y, x), want, 1e-6);
      }
    }
  }
  EXPECT_EQ(r.params.wb_gains, (Vec3{1.0, 1.0, 1.0}));
  EXPECT_EQ(r.params.inverse_digital_gain, 1.0);
}

TEST(Unprocess, RoundTripBelowKnee) {
  const CameraProfile profile = default_profile();
  const PlanarImage srgb = smooth_image(64, 64, 21);
  Rng rng(10);
  UnprocessResult r = unprocess(srgb, profile.unprocess, rng);
  const BayerImage raw = mosaic(r.raw_rgb, r.params.bayer_pattern);
  PipelineParams p = r.params;
  p.tone_map_enabled = true;
  const PlanarImage back = process_raw_to_srgb(raw, p, ProcessOptions{true, true});
  // Interior pixels of a smooth image: demosaic error is second order.
  double sum = 0.0;
  int n = 0;
  for (int c = 0; c < 3; ++c) {
    for (int y = 2; y < 62; ++y) {
      for (int x = 2; x < 62; ++x) {
        sum += std::abs(back.at(c, y, x) - srgb.at(c, y, x));
        ++n;
      }
    }
  }
  EXPECT_LT(sum / n, 5e-3);
}

TEST(Unprocess, DarkensEveryChannel) {
  const CameraProfile profile = default_profile();
  Rng rng(11);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const PlanarImage srgb = smooth_image(32, 32, 100 + s);
    const UnprocessResult r = unprocess(srgb, profile.unprocess, rng);
    for (int c = 0; c < 3; ++c) {
      double a = 0, b = 0;
      for (float v : srgb.plane(c)) a += v;
      for (float v : r.raw_rgb.plane(c)) b += v;
      EXPECT_LT(b, a);
    }
  }
}

TEST(Unprocess, OutputInUnitRangeAndFinite) {
  const CameraProfile profile = default_profile();
  PlanarImage srgb = testing::random_image(3, 32, 32, 12, ColorSpace::kGammaSrgb);
  srgb.at(0, 0, 0) = 1.7f;   // out-of-range input is clamped
  srgb.at(1, 0, 0) = -0.4f;
  Rng rng(12);
  const UnprocessResult r = unprocess(srgb, profile.unprocess, rng);
  for (float v : r.raw_rgb.samples()) {
    ASSERT_TRUE(std::isfinite(v));
    ASSERT_GE(v, 0.0f);
    ASSERT_LE(v, 1.0f);
  }
}

TEST(UnprocessConfig, Validation) {
  UnprocessConfig cfg = default_profile().unprocess;
  cfg.red_gain = {2.4, 1.9};
  EXPECT_THROW(cfg.validate(), Error);
  cfg = default_profile().unprocess;
  cfg.highlight_threshold = 0.0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = default_profile().unprocess;
  cfg.ccm_set.matrices.push_back({"flat", {{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}}});
  EXPECT_THROW(cfg.validate(), Error);
}

}  // namespace
}  // namespace unraw
