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
#include <vector>

#include "test_util.hpp"
#include "unraw/core_image.hpp"
#include "unraw/error.hpp"

namespace unraw {
namespace {

using testing::random_bayer;
using testing::random_image;

constexpr BayerPattern kPatterns[] = {BayerPattern::kRggb, BayerPattern::kBggr,
                                      BayerPattern::kGrbg, BayerPattern::kGbrg};

TEST(Mosaic, SelectsChannelByPattern) {
  PlanarImage rgb(3, 2, 2);
  for (int y = 0; y < 2; ++y) {
    for (int x = 0; x < 2; ++x) {
      rgb.at(0, y, x) = 1.0f;
      rgb.at(1, y, x) = 0.5f;
      rgb.at(2, y, x) = 0.0f;
    }
  }
  const BayerImage b = mosaic(rgb, BayerPattern::kRggb);
  EXPECT_EQ(b.at(0, 0), 1.0f);
  EXPECT_EQ(b.at(0, 1), 0.5f);
  EXPECT_EQ(b.at(1, 0), 0.5f);
  EXPECT_EQ(b.at(1, 1), 0.0f);
}

TEST(Mosaic, ConstantGrayStaysConstant) {
  PlanarImage rgb(3, 6, 8);
  for (auto& v : rgb.samples()) v = 0.3f;
  for (auto p : kPatterns) {
    const BayerImage b = mosaic(rgb, p);
    for (float v : b.samples()) EXPECT_EQ(v, 0.3f);
  }
}

TEST(Mosaic, RejectsOddDimensions) {
  try {
    mosaic(PlanarImage(3, 3, 4), BayerPattern::kRggb);
    FAIL() << "expected a dimension error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimension);
  }
}

TEST(Mosaic, InvertsDemosaicOnRandomPlanes) {
  for (auto p : kPatterns) {
    for (std::uint64_t s = 0; s < 25; ++s) {
      const BayerImage b = random_bayer(p, 8, 8, s);
      EXPECT_EQ(mosaic(demosaic_bilinear(b), p), b);
    }
  }
}

TEST(Demosaic, ConstantPlane) {
  BayerImage b(BayerPattern::kGrbg, 6, 6);
  for (auto& v : b.samples()) v = 0.3f;
  const PlanarImage rgb = demosaic_bilinear(b);
  for (float v : rgb.samples()) EXPECT_FLOAT_EQ(v, 0.3f);
}

TEST(Demosaic, HandStencilAtAdjacentGreenSite) {
  BayerImage b(BayerPattern::kRggb, 4, 4);
  b.at(0, 2) = 1.0f;  // an R site
  const PlanarImage rgb = demosaic_bilinear(b);
  EXPECT_FLOAT_EQ(rgb.at(0, 0, 1), 0.5f);
  EXPECT_FLOAT_EQ(rgb.at(0, 0, 2), 1.0f);
  // Diagonal B site at (1,1) sees R at (0,0),(0,2),(2,0),(2,2).
  EXPECT_FLOAT_EQ(rgb.at(0, 1, 1), 0.25f);
}

// Straightforward reference: average every same-colour sample in the
// mirrored 3x3 neighbourhood, or copy the sample at its own site.
PlanarImage reference_demosaic(const BayerImage& b) {
  const int h = b.height();
  const int w = b.width();
  auto reflect = [](int i, int n) { return i < 0 ? -i : (i >= n ? 2 * n - 2 - i : i); };
  PlanarImage out(3, h, w);
  for (int c = 0; c < 3; ++c) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (static_cast<int>(b.channel_at(y, x)) == c) {
          out.at(c, y, x) = b.at(y, x);
          continue;
        }
        double sum = 0.0;
        int n = 0;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int yy = y + dy;
            const int xx = x + dx;
            // Reflection keeps parity, so the unreflected phase names the colour.
            if (static_cast<int>(b.channel_at(yy & 1, xx & 1)) != c) continue;
            sum += b.at(reflect(yy, h), reflect(xx, w));
            ++n;
          }
        }
        out.at(c, y, x) = static_cast<float>(sum / n);
      }
    }
  }
  return out;
}

TEST(Demosaic, MatchesReferenceOnRandomPlanes) {
  for (auto p : kPatterns) {
    const BayerImage b = random_bayer(p, 10, 12, 17);
    const PlanarImage got = demosaic_bilinear(b);
    const PlanarImage want = reference_demosaic(b);
    for (std::size_t i = 0; i < got.samples().size(); ++i) {
      EXPECT_NEAR(got.samples()[i], want.samples()[i], 1e-6) << "index " << i;
    }
  }
}

TEST(Downsample, KernelIsNormalised) {
  const auto k = gaussian_kernel(kDownsampleSigma, kDownsampleRadius);
  ASSERT_EQ(k.size(), 7u);
  double sum = 0.0;
  for (double v : k) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Downsample, ConstantImage) {
  PlanarImage img(3, 9, 12);
  for (auto& v : img.samples()) v = 0.7f;
  const PlanarImage out = downsample_2x_gaussian(img);
  EXPECT_EQ(out.height(), 4);
  EXPECT_EQ(out.width(), 6);
  for (float v : out.samples()) EXPECT_NEAR(v, 0.7f, 1e-6);
}

TEST(Downsample, RampMatchesDenseConvolution) {
  PlanarImage img(1, 8, 8);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) img.at(0, y, x) = static_cast<float>(0.1 * x + 0.03 * y * y);
  }
  // Full 7x7 two-dimensional kernel, normalised on its own.
  double weights[7][7];
  double total = 0.0;
  for (int dy = -3; dy <= 3; ++dy) {
    for (int dx = -3; dx <= 3; ++dx) {
      weights[dy + 3][dx + 3] = std::exp(-(dx * dx + dy * dy) / 2.0);
      total += weights[dy + 3][dx + 3];
    }
  }
  auto reflect = [](int i, int n) { return i < 0 ? -i : (i >= n ? 2 * n - 2 - i : i); };
  const PlanarImage out = downsample_2x_gaussian(img);
  ASSERT_EQ(out.height(), 4);
  ASSERT_EQ(out.width(), 4);
  for (int oy = 0; oy < 4; ++oy) {
    for (int ox = 0; ox < 4; ++ox) {
      double acc = 0.0;
      for (int dy = -3; dy <= 3; ++dy) {
        for (int dx = -3; dx <= 3; ++dx) {
          acc += weights[dy + 3][dx + 3] *
                 img.at(0, reflect(2 * oy + dy, 8), reflect(2 * ox + dx, 8));
        }
      }
      EXPECT_NEAR(out.at(0, oy, ox), acc / total, 1e-6);
    }
  }
}

TEST(Downsample, PaddingRoundTrip) {
  const PlanarImage img = random_image(3, 10, 10, 3);
  const PlanarImage padded = pad_mirror(img, 4);
  EXPECT_EQ(padded.height(), 18);
  EXPECT_EQ(apply_crop(padded, CropSpec{4, 4, 10, false, false}), img);
}

TEST(Downsample, RejectsTinyImage) {
  EXPECT_THROW(downsample_2x_gaussian(PlanarImage(3, 1, 5)), Error);
}

TEST(Crop, ExactSizeWithoutFlipsIsIdentity) {
  const PlanarImage img = random_image(3, 16, 16, 5);
  Rng rng(1);
  EXPECT_EQ(random_crop_flip(img, 16, rng, CropOptions{false}), img);
}

TEST(Crop, SameSeedSameOutput) {
  const PlanarImage img = random_image(3, 40, 50, 6);
  Rng a(99);
  Rng b(99);
  EXPECT_EQ(random_crop_flip(img, 16, a), random_crop_flip(img, 16, b));
}

TEST(Crop, FlipsMirrorTheWindow) {
  const PlanarImage img = random_image(1, 4, 4, 8);
  const PlanarImage h = apply_crop(img, CropSpec{0, 0, 4, true, false});
  const PlanarImage v = apply_crop(img, CropSpec{0, 0, 4, false, true});
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) {
      EXPECT_EQ(h.at(0, y, x), img.at(0, y, 3 - x));
      EXPECT_EQ(v.at(0, y, x), img.at(0, 3 - y, x));
    }
  }
}

TEST(Crop, OffsetsAreEvenAndUniform) {
  // 138 - 128 = 10, so even offsets are {0, 2, ..., 10}: six cells.
  constexpr int kDraws = 10000;
  std::vector<int> top(6, 0);
  std::vector<int> left(6, 0);
  int hflips = 0;
  Rng rng(2024);
  for (int i = 0; i < kDraws; ++i) {
    const CropSpec c = sample_crop(138, 138, 128, rng);
    ASSERT_EQ(c.top % 2, 0);
    ASSERT_EQ(c.left % 2, 0);
    ASSERT_LE(c.top, 10);
    ASSERT_LE(c.left, 10);
    ++top[c.top / 2];
    ++left[c.left / 2];
    hflips += c.flip_horizontal ? 1 : 0;
  }
  auto chi2 = [](const std::vector<int>& counts) {
    const double expected = static_cast<double>(kDraws) / counts.size();
    double s = 0.0;
    for (int n : counts) s += (n - expected) * (n - expected) / expected;
    return s;
  };
  // 99th percentile of chi-square with 5 degrees of freedom.
  EXPECT_LT(chi2(top), 15.086);
  EXPECT_LT(chi2(left), 15.086);
  EXPECT_NEAR(hflips / static_cast<double>(kDraws), 0.5, 0.02);
}

TEST(Crop, RejectsUndersizedImage) {
  Rng rng(0);
  try {
    random_crop_flip(PlanarImage(3, 10, 10), 16, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimension);
  }
}

TEST(Image, RejectsNonFiniteSamples) {
  std::vector<float> s = {0.0f, NAN};
  EXPECT_THROW(require_finite(s, "test"), Error);
}

TEST(Image, OddBayerDimensionsRejected) {
  EXPECT_THROW(BayerImage(BayerPattern::kRggb, 3, 4), Error);
}

}  // namespace
}  // namespace unraw
