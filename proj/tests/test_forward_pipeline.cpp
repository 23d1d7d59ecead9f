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

#include "test_util.hpp"
#include "unraw/core_image.hpp"
#include "unraw/error.hpp"
#include "unraw/forward_pipeline.hpp"
#include "unraw/matrix3.hpp"

namespace unraw {
namespace {

using testing::random_bayer;
using testing::random_image;

TEST(WhiteBalance, UnitGainsAreIdentity) {
  const BayerImage b = random_bayer(BayerPattern::kRggb, 8, 8, 1);
  EXPECT_EQ(apply_wb_gains(b, PipelineParams{}), b);
}

TEST(WhiteBalance, ScalesAndClips) {
  BayerImage b(BayerPattern::kRggb, 2, 2);
  b.at(0, 0) = 0.4f;
  PipelineParams p;
  p.wb_gains = {2.0, 1.0, 1.5};
  EXPECT_FLOAT_EQ(apply_wb_gains(b, p).at(0, 0), 0.8f);
  b.at(0, 0) = 0.6f;
  EXPECT_FLOAT_EQ(apply_wb_gains(b, p).at(0, 0), 1.0f);
  EXPECT_FLOAT_EQ(apply_wb_gains(b, p, GainOptions{false, false}).at(0, 0), 1.2f);
}

TEST(WhiteBalance, DigitalGainOption) {
  PlanarImage rgb(3, 2, 2);
  for (auto& v : rgb.samples()) v = 0.2f;
  PipelineParams p;
  p.wb_gains = {2.0, 1.0, 1.5};
  p.inverse_digital_gain = 0.8;
  const PlanarImage out = apply_wb_gains(rgb, p, GainOptions{true, true});
  EXPECT_NEAR(out.at(0, 0, 0), 0.2 * 2.0 / 0.8, 1e-6);
  EXPECT_NEAR(out.at(1, 0, 0), 0.2 / 0.8, 1e-6);
}

TEST(Params, Validation) {
  PipelineParams p;
  p.wb_gains[1] = 1.1;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.wb_gains[0] = 0.0;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.ccm = {{{1, 2, 3}, {2, 4, 6}, {0, 0, 1}}};
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.highlight_threshold = 1.0;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.gamma_epsilon = 0.0;
  EXPECT_THROW(p.validate(), Error);
}

TEST(Ccm, IdentityAndInverse) {
  const PlanarImage x = random_image(3, 5, 7, 2);
  EXPECT_EQ(apply_ccm(x, kIdentity3), x);
  const Matrix3 m = {{{1.72, -0.56, -0.16}, {-0.22, 1.52, -0.30}, {0.04, -0.62, 1.58}}};
  const PlanarImage back = apply_ccm(apply_ccm(x, m), inverse(m));
  for (std::size_t i = 0; i < x.samples().size(); ++i) {
    EXPECT_NEAR(back.samples()[i], x.samples()[i], 1e-5);
  }
}

TEST(Ccm, PermutationSwapsChannels) {
  const PlanarImage x = random_image(3, 4, 4, 3);
  const Matrix3 swap = {{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}};
  const PlanarImage y = apply_ccm(x, swap);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      EXPECT_EQ(y.at(0, i, j), x.at(2, i, j));
      EXPECT_EQ(y.at(1, i, j), x.at(1, i, j));
      EXPECT_EQ(y.at(2, i, j), x.at(0, i, j));
    }
  }
}

TEST(Ccm, Linear) {
  const PlanarImage x = random_image(3, 6, 6, 4);
  const PlanarImage y = random_image(3, 6, 6, 5);
  const Matrix3 m = {{{1.58, -0.41, -0.17}, {-0.29, 1.61, -0.32}, {-0.02, -0.48, 1.50}}};
  const double a = 0.3;
  const double b = -1.7;
  PlanarImage mix(3, 6, 6);
  for (std::size_t i = 0; i < mix.samples().size(); ++i) {
    mix.samples()[i] = static_cast<float>(a * x.samples()[i] + b * y.samples()[i]);
  }
  const PlanarImage fx = apply_ccm(x, m);
  const PlanarImage fy = apply_ccm(y, m);
  const PlanarImage fm = apply_ccm(mix, m);
  for (std::size_t i = 0; i < fm.samples().size(); ++i) {
    EXPECT_NEAR(fm.samples()[i], a * fx.samples()[i] + b * fy.samples()[i], 1e-5);
  }
}

TEST(Ccm, DoesNotClamp) {
  PlanarImage x(3, 1, 1);
  x.at(0, 0, 0) = 1.0f;
  const Matrix3 m = {{{2, 0, 0}, {-1, 1, 0}, {0, 0, 1}}};
  const PlanarImage y = apply_ccm(x, m);
  EXPECT_FLOAT_EQ(y.at(0, 0, 0), 2.0f);
  EXPECT_FLOAT_EQ(y.at(1, 0, 0), -1.0f);
}

TEST(Gamma, KnownValues) {
  EXPECT_EQ(gamma_compress(1.0), 1.0);
  EXPECT_NEAR(gamma_compress(0.5), std::pow(0.5, 1.0 / 2.2), 1e-15);
  EXPECT_NEAR(gamma_compress(0.5), 0.72974, 1e-5);
  EXPECT_NEAR(gamma_compress(0.0), 2.31e-4, 0.01e-4);
  EXPECT_EQ(gamma_compress(-3.0), gamma_compress(0.0));
}

TEST(Gamma, ImageClampOnlyOnRenderingPath) {
  PlanarImage x(1, 1, 2);
  x.at(0, 0, 0) = 1.5f;
  x.at(0, 0, 1) = 0.25f;
  EXPECT_FLOAT_EQ(gamma_compress(x, kGammaEpsilon, true).at(0, 0, 0), 1.0f);
  EXPECT_GT(gamma_compress(x, kGammaEpsilon, false).at(0, 0, 0), 1.0f);
}

TEST(Smoothstep, KnownValues) {
  EXPECT_EQ(smoothstep(0.0), 0.0);
  EXPECT_EQ(smoothstep(1.0), 1.0);
  EXPECT_EQ(smoothstep(0.5), 0.5);
  EXPECT_DOUBLE_EQ(smoothstep(0.25), 0.15625);
  EXPECT_EQ(smoothstep(1.4), 1.0);
  EXPECT_EQ(smoothstep(-0.2), 0.0);
}

TEST(Curves, MonotoneOnDenseGrid) {
  double prev_g = -1.0;
  double prev_s = -1.0;
  for (int i = 0; i <= 10000; ++i) {
    const double x = i / 10000.0;
    ASSERT_GE(gamma_compress(x), prev_g);
    ASSERT_GE(smoothstep(x), prev_s);
    prev_g = gamma_compress(x);
    prev_s = smoothstep(x);
  }
}

TEST(Process, IdentityParamsIsGammaOfDemosaic) {
  const BayerImage b = random_bayer(BayerPattern::kBggr, 12, 12, 6);
  PipelineParams p;
  p.bayer_pattern = BayerPattern::kBggr;
  const PlanarImage got = process_raw_to_srgb(b, p);
  const PlanarImage want = gamma_compress(demosaic_bilinear(b), kGammaEpsilon, true);
  EXPECT_EQ(got.samples().size(), want.samples().size());
  for (std::size_t i = 0; i < got.samples().size(); ++i) {
    EXPECT_EQ(got.samples()[i], want.samples()[i]);
  }
  EXPECT_EQ(got.color_space(), ColorSpace::kGammaSrgb);
}

TEST(Process, ConstantGrayMosaic) {
  BayerImage b(BayerPattern::kRggb, 4, 4);
  for (auto& v : b.samples()) v = 0.25f;
  const PlanarImage out = process_raw_to_srgb(b, PipelineParams{});
  for (float v : out.samples()) {
    EXPECT_NEAR(v, 0.53252, 1e-5);
  }
}

TEST(Process, PatternMismatchRejected) {
  const BayerImage b = random_bayer(BayerPattern::kGrbg, 4, 4, 1);
  EXPECT_THROW(process_raw_to_srgb(b, PipelineParams{}), Error);
}

TEST(Process, DeterministicAcrossCalls) {
  const BayerImage b = random_bayer(BayerPattern::kRggb, 32, 32, 8);
  PipelineParams p;
  p.wb_gains = {2.1, 1.0, 1.7};
  p.ccm = {{{1.72, -0.56, -0.16}, {-0.22, 1.52, -0.30}, {0.04, -0.62, 1.58}}};
  p.tone_map_enabled = true;
  EXPECT_EQ(process_raw_to_srgb(b, p), process_raw_to_srgb(b, p));
}

TEST(Matrix, InverseAndConditioning) {
  const Matrix3 m = {{{2, 0, 0}, {0, 4, 0}, {0, 0, 0.5}}};
  EXPECT_DOUBLE_EQ(determinant(m), 4.0);
  const Matrix3 inv = inverse(m);
  EXPECT_DOUBLE_EQ(inv[1][1], 0.25);
  const Matrix3 id = multiply(m, inv);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(id[i][j], i == j ? 1.0 : 0.0, 1e-15);
  }
  const Matrix3 singular = {{{1, 2, 3}, {2, 4, 6}, {1, 1, 1}}};
  EXPECT_THROW(inverse(singular), Error);
  EXPECT_TRUE(std::isinf(condition_number(singular)));
}

}  // namespace
}  // namespace unraw
