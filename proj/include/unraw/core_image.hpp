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

#include <vector>

#include "unraw/image.hpp"
#include "unraw/rng.hpp"

namespace unraw {

/// Reflect-without-repeat border rule: -1 -> 1, n -> n - 2.
int mirror_index(int i, int n) noexcept;

/// Keeps the channel the colour filter samples at each site. The input must
/// have three channels and even dimensions.
BayerImage mosaic(const PlanarImage& rgb, BayerPattern pattern);

/// Bilinear demosaic. Sampled channels are copied through; each missing
/// channel is the mean of the same-colour sites in the 3x3 neighbourhood,
/// which is the usual bilinear stencil for every Bayer layout.
PlanarImage demosaic_bilinear(const BayerImage& bayer);

/// Normalised Gaussian taps for offsets -radius..radius.
std::vector<double> gaussian_kernel(double sigma, int radius);

inline constexpr double kDownsampleSigma = 1.0;
inline constexpr int kDownsampleRadius = 3;

/// Separable Gaussian blur (sigma 1, radius 3, mirror borders) followed by
/// keeping every second row and column starting at 0.
PlanarImage downsample_2x_gaussian(const PlanarImage& image);

/// Mirror-pads every channel by `pad` pixels on each side.
PlanarImage pad_mirror(const PlanarImage& image, int pad);

struct CropSpec {
  int top = 0;
  int left = 0;
  int size = 0;
  bool flip_horizontal = false;
  bool flip_vertical = false;

  friend bool operator==(const CropSpec&, const CropSpec&) = default;
};

struct CropOptions {
  bool allow_flips = true;
};

/// Draws an even-aligned crop offset uniformly over the valid positions,
/// then each flip with probability 1/2.
CropSpec sample_crop(int height, int width, int size, Rng& rng,
                     CropOptions options = {});

PlanarImage apply_crop(const PlanarImage& image, const CropSpec& crop);

PlanarImage random_crop_flip(const PlanarImage& image, int size, Rng& rng,
                             CropOptions options = {});

}  // namespace unraw
