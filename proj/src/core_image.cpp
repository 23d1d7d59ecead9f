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

#include "unraw/core_image.hpp"

#include <cmath>
#include <string>

#include "unraw/error.hpp"

namespace unraw {

int mirror_index(int i, int n) noexcept {
  if (n <= 1) return 0;
  const int period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

BayerImage mosaic(const PlanarImage& rgb, BayerPattern pattern) {
  if (rgb.channels() != 3) {
    throw Error(ErrorCode::kDimension, "mosaic needs a 3-channel image");
  }
  if (rgb.height() % 2 != 0 || rgb.width() % 2 != 0) {
    throw Error(ErrorCode::kDimension, "mosaic needs even dimensions, got " +
                                           std::to_string(rgb.height()) + "x" +
                                           std::to_string(rgb.width()));
  }
  BayerImage out(pattern, rgb.height(), rgb.width());
  for (int y = 0; y < rgb.height(); ++y) {
    for (int x = 0; x < rgb.width(); ++x) {
      out.at(y, x) = rgb.at(static_cast<int>(out.channel_at(y, x)), y, x);
    }
  }
  return out;
}

PlanarImage demosaic_bilinear(const BayerImage& bayer) {
  const int h = bayer.height();
  const int w = bayer.width();
  PlanarImage out(3, h, w, ColorSpace::kLinearRawRgb);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Channel sampled = bayer.channel_at(y, x);
      double sum[3] = {0.0, 0.0, 0.0};
      int count[3] = {0, 0, 0};
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dy == 0 && dx == 0) continue;
          // Mirroring keeps the parity of the coordinate, so the CFA colour
          // of the virtual site equals that of the mirrored one.
          const int c = static_cast<int>(bayer.channel_at(y + dy, x + dx));
          sum[c] += bayer.at(mirror_index(y + dy, h), mirror_index(x + dx, w));
          ++count[c];
        }
      }
      for (int c = 0; c < 3; ++c) {
        out.at(c, y, x) = c == static_cast<int>(sampled)
                              ? bayer.at(y, x)
                              : static_cast<float>(sum[c] / count[c]);
      }
    }
  }
  return out;
}

std::vector<double> gaussian_kernel(double sigma, int radius) {
  if (!(sigma > 0.0) || radius < 0) {
    throw Error(ErrorCode::kArgument, "Gaussian kernel needs sigma > 0 and radius >= 0");
  }
  std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
  double total = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double v = std::exp(-0.5 * (i * i) / (sigma * sigma));
    taps[static_cast<std::size_t>(i + radius)] = v;
    total += v;
  }
  for (double& v : taps) v /= total;
  return taps;
}

PlanarImage downsample_2x_gaussian(const PlanarImage& image) {
  const int h = image.height();
  const int w = image.width();
  if (h < 2 || w < 2) {
    throw Error(ErrorCode::kDimension, "downsample needs at least a 2x2 image");
  }
  const auto taps = gaussian_kernel(kDownsampleSigma, kDownsampleRadius);
  const int r = kDownsampleRadius;
  const int oh = h / 2;
  const int ow = w / 2;
  PlanarImage out(image.channels(), oh, ow, image.color_space());
  std::vector<double> rows(static_cast<std::size_t>(h) * static_cast<std::size_t>(ow));
  for (int c = 0; c < image.channels(); ++c) {
    // Horizontal pass, evaluated only at the kept columns.
    for (int y = 0; y < h; ++y) {
      for (int ox = 0; ox < ow; ++ox) {
        double acc = 0.0;
        for (int k = -r; k <= r; ++k) {
          acc += taps[static_cast<std::size_t>(k + r)] *
                 image.at(c, y, mirror_index(2 * ox + k, w));
        }
        rows[static_cast<std::size_t>(y) * ow + ox] = acc;
      }
    }
    for (int oy = 0; oy < oh; ++oy) {
      for (int ox = 0; ox < ow; ++ox) {
        double acc = 0.0;
        for (int k = -r; k <= r; ++k) {
          acc += taps[static_cast<std::size_t>(k + r)] *
                 rows[static_cast<std::size_t>(mirror_index(2 * oy + k, h)) * ow + ox];
        }
        out.at(c, oy, ox) = static_cast<float>(acc);
      }
    }
  }
  return out;
}

PlanarImage pad_mirror(const PlanarImage& image, int pad) {
  if (pad < 0) throw Error(ErrorCode::kArgument, "padding must be non-negative");
  const int h = image.height();
  const int w = image.width();
  PlanarImage out(image.channels(), h + 2 * pad, w + 2 * pad, image.color_space());
  for (int c = 0; c < image.channels(); ++c) {
    for (int y = 0; y < out.height(); ++y) {
      for (int x = 0; x < out.width(); ++x) {
        out.at(c, y, x) = image.at(c, mirror_index(y - pad, h), mirror_index(x - pad, w));
      }
    }
  }
  return out;
}

CropSpec sample_crop(int height, int width, int size, Rng& rng, CropOptions options) {
  if (size <= 0) throw Error(ErrorCode::kArgument, "crop size must be positive");
  if (height < size || width < size) {
    throw Error(ErrorCode::kDimension,
                "image " + std::to_string(height) + "x" + std::to_string(width) +
                    " is smaller than the " + std::to_string(size) + " crop");
  }
  CropSpec crop;
  crop.size = size;
  crop.top = 2 * static_cast<int>(rng.below(static_cast<std::uint64_t>((height - size) / 2 + 1)));
  crop.left = 2 * static_cast<int>(rng.below(static_cast<std::uint64_t>((width - size) / 2 + 1)));
  if (options.allow_flips) {
    crop.flip_horizontal = rng.coin();
    crop.flip_vertical = rng.coin();
  }
  return crop;
}

PlanarImage apply_crop(const PlanarImage& image, const CropSpec& crop) {
  if (crop.size <= 0 || crop.top < 0 || crop.left < 0 ||
      crop.top + crop.size > image.height() || crop.left + crop.size > image.width()) {
    throw Error(ErrorCode::kDimension, "crop window lies outside the image");
  }
  const int s = crop.size;
  PlanarImage out(image.channels(), s, s, image.color_space());
  for (int c = 0; c < image.channels(); ++c) {
    for (int y = 0; y < s; ++y) {
      const int sy = crop.top + (crop.flip_vertical ? s - 1 - y : y);
      for (int x = 0; x < s; ++x) {
        const int sx = crop.left + (crop.flip_horizontal ? s - 1 - x : x);
        out.at(c, y, x) = image.at(c, sy, sx);
      }
    }
  }
  return out;
}

PlanarImage random_crop_flip(const PlanarImage& image, int size, Rng& rng,
                             CropOptions options) {
  return apply_crop(image, sample_crop(image.height(), image.width(), size, rng, options));
}

}  // namespace unraw
