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

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace unraw {

enum class ColorSpace {
  kLinearRawRgb,
  kLinearSrgbPrimaries,
  kGammaSrgb,
};

std::string_view to_string(ColorSpace space);
ColorSpace color_space_from_string(std::string_view name);

/// Channel-major image of 32-bit samples. Sample (c, y, x) lives at
/// index (c * height + y) * width + x.
class PlanarImage {
 public:
  PlanarImage() = default;
  PlanarImage(int channels, int height, int width,
              ColorSpace space = ColorSpace::kLinearRawRgb);
  PlanarImage(int channels, int height, int width, std::vector<float> samples,
              ColorSpace space = ColorSpace::kLinearRawRgb);

  int channels() const noexcept { return channels_; }
  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  std::size_t plane_size() const noexcept {
    return static_cast<std::size_t>(height_) * static_cast<std::size_t>(width_);
  }
  bool empty() const noexcept { return samples_.empty(); }

  ColorSpace color_space() const noexcept { return space_; }
  void set_color_space(ColorSpace space) noexcept { space_ = space; }

  float at(int c, int y, int x) const noexcept {
    return samples_[index(c, y, x)];
  }
  float& at(int c, int y, int x) noexcept { return samples_[index(c, y, x)]; }

  std::span<const float> plane(int c) const noexcept {
    return {samples_.data() + static_cast<std::size_t>(c) * plane_size(),
            plane_size()};
  }
  std::span<float> plane(int c) noexcept {
    return {samples_.data() + static_cast<std::size_t>(c) * plane_size(),
            plane_size()};
  }

  std::span<const float> samples() const noexcept { return samples_; }
  std::span<float> samples() noexcept { return samples_; }

  bool same_geometry(const PlanarImage& other) const noexcept {
    return channels_ == other.channels_ && height_ == other.height_ &&
           width_ == other.width_;
  }

  friend bool operator==(const PlanarImage&, const PlanarImage&) = default;

 private:
  std::size_t index(int c, int y, int x) const noexcept {
    return (static_cast<std::size_t>(c) * static_cast<std::size_t>(height_) +
            static_cast<std::size_t>(y)) *
               static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int channels_ = 0;
  int height_ = 0;
  int width_ = 0;
  ColorSpace space_ = ColorSpace::kLinearRawRgb;
  std::vector<float> samples_;
};

enum class Channel : int { kRed = 0, kGreen = 1, kBlue = 2 };

enum class BayerPattern { kRggb, kBggr, kGrbg, kGbrg };

std::string_view to_string(BayerPattern pattern);
BayerPattern bayer_pattern_from_string(std::string_view name);

/// The 2x2 layout in raster order: (0,0), (0,1), (1,0), (1,1).
std::array<Channel, 4> bayer_layout(BayerPattern pattern) noexcept;

inline Channel bayer_channel_at(BayerPattern pattern, int y, int x) noexcept {
  return bayer_layout(pattern)[static_cast<std::size_t>(((y & 1) << 1) | (x & 1))];
}

/// Single-plane colour filter array image. Height and width are even.
class BayerImage {
 public:
  BayerImage() = default;
  BayerImage(BayerPattern pattern, int height, int width);
  BayerImage(BayerPattern pattern, int height, int width,
             std::vector<float> samples);

  BayerPattern pattern() const noexcept { return pattern_; }
  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }

  float at(int y, int x) const noexcept {
    return samples_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                    static_cast<std::size_t>(x)];
  }
  float& at(int y, int x) noexcept {
    return samples_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                    static_cast<std::size_t>(x)];
  }
  Channel channel_at(int y, int x) const noexcept {
    return bayer_channel_at(pattern_, y, x);
  }

  std::span<const float> samples() const noexcept { return samples_; }
  std::span<float> samples() noexcept { return samples_; }

  friend bool operator==(const BayerImage&, const BayerImage&) = default;

 private:
  BayerPattern pattern_ = BayerPattern::kRggb;
  int height_ = 0;
  int width_ = 0;
  std::vector<float> samples_;
};

/// Throws kDomain if any sample is NaN or infinite.
void require_finite(std::span<const float> samples, std::string_view what);

}  // namespace unraw
