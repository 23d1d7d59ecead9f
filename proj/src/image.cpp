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

#include "unraw/image.hpp"

#include <cmath>
#include <string>

#include "unraw/error.hpp"

namespace unraw {

std::string_view to_string(ColorSpace space) {
  switch (space) {
    case ColorSpace::kLinearRawRgb:
      return "linear-raw-rgb";
    case ColorSpace::kLinearSrgbPrimaries:
      return "linear-srgb-primaries";
    case ColorSpace::kGammaSrgb:
      return "gamma-srgb";
  }
  return "unknown";
}

ColorSpace color_space_from_string(std::string_view name) {
  for (auto space : {ColorSpace::kLinearRawRgb, ColorSpace::kLinearSrgbPrimaries,
                     ColorSpace::kGammaSrgb}) {
    if (to_string(space) == name) return space;
  }
  throw Error(ErrorCode::kConfig, "unknown colour space '" + std::string(name) + "'");
}

PlanarImage::PlanarImage(int channels, int height, int width, ColorSpace space)
    : PlanarImage(channels, height, width,
                  std::vector<float>(static_cast<std::size_t>(channels < 0 ? 0 : channels) *
                                     static_cast<std::size_t>(height < 0 ? 0 : height) *
                                     static_cast<std::size_t>(width < 0 ? 0 : width)),
                  space) {}

PlanarImage::PlanarImage(int channels, int height, int width,
                         std::vector<float> samples, ColorSpace space)
    : channels_(channels),
      height_(height),
      width_(width),
      space_(space),
      samples_(std::move(samples)) {
  if (channels != 1 && channels != 3 && channels != 4) {
    throw Error(ErrorCode::kDimension,
                "image must have 1, 3 or 4 channels, got " + std::to_string(channels));
  }
  if (height <= 0 || width <= 0) {
    throw Error(ErrorCode::kDimension, "image dimensions must be positive");
  }
  if (samples_.size() != static_cast<std::size_t>(channels) * plane_size()) {
    throw Error(ErrorCode::kDimension, "sample count does not match image geometry");
  }
}

std::string_view to_string(BayerPattern pattern) {
  switch (pattern) {
    case BayerPattern::kRggb:
      return "RGGB";
    case BayerPattern::kBggr:
      return "BGGR";
    case BayerPattern::kGrbg:
      return "GRBG";
    case BayerPattern::kGbrg:
      return "GBRG";
  }
  return "unknown";
}

BayerPattern bayer_pattern_from_string(std::string_view name) {
  for (auto p : {BayerPattern::kRggb, BayerPattern::kBggr, BayerPattern::kGrbg,
                 BayerPattern::kGbrg}) {
    if (to_string(p) == name) return p;
  }
  throw Error(ErrorCode::kConfig, "unknown Bayer pattern '" + std::string(name) + "'");
}

std::array<Channel, 4> bayer_layout(BayerPattern pattern) noexcept {
  constexpr auto R = Channel::kRed;
  constexpr auto G = Channel::kGreen;
  constexpr auto B = Channel::kBlue;
  switch (pattern) {
    case BayerPattern::kRggb:
      return {R, G, G, B};
    case BayerPattern::kBggr:
      return {B, G, G, R};
    case BayerPattern::kGrbg:
      return {G, R, B, G};
    case BayerPattern::kGbrg:
      return {G, B, R, G};
  }
  return {R, G, G, B};
}

BayerImage::BayerImage(BayerPattern pattern, int height, int width)
    : BayerImage(pattern, height, width,
                 std::vector<float>(static_cast<std::size_t>(height < 0 ? 0 : height) *
                                    static_cast<std::size_t>(width < 0 ? 0 : width))) {}

BayerImage::BayerImage(BayerPattern pattern, int height, int width,
                       std::vector<float> samples)
    : pattern_(pattern), height_(height), width_(width), samples_(std::move(samples)) {
  if (height <= 0 || width <= 0 || height % 2 != 0 || width % 2 != 0) {
    throw Error(ErrorCode::kDimension,
                "Bayer image dimensions must be positive and even, got " +
                    std::to_string(height) + "x" + std::to_string(width));
  }
  if (samples_.size() != static_cast<std::size_t>(height) * static_cast<std::size_t>(width)) {
    throw Error(ErrorCode::kDimension, "sample count does not match Bayer geometry");
  }
}

void require_finite(std::span<const float> samples, std::string_view what) {
  for (float v : samples) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kDomain, std::string(what) + " contains a non-finite sample");
    }
  }
}

}  // namespace unraw
