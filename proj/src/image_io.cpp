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

#include "unraw/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "unraw/container.hpp"
#include "unraw/error.hpp"

namespace unraw {

namespace {

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

struct FileCloser {
  void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.string().c_str(), mode));
  if (!f) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return f;
}

// Interleaved samples straight from the decoder.
struct Decoded {
  int width = 0;
  int height = 0;
  int channels = 0;
  int maxval = 0;
  std::vector<std::uint16_t> samples;
};

PlanarImage to_planar(const Decoded& d) {
  PlanarImage out(3, d.height, d.width, ColorSpace::kGammaSrgb);
  const double scale = 1.0 / d.maxval;
  for (int y = 0; y < d.height; ++y) {
    for (int x = 0; x < d.width; ++x) {
      const std::size_t base =
          (static_cast<std::size_t>(y) * d.width + x) * static_cast<std::size_t>(d.channels);
      for (int c = 0; c < 3; ++c) {
        const int src = d.channels >= 3 ? c : 0;
        out.at(c, y, x) = static_cast<float>(d.samples[base + src] * scale);
      }
    }
  }
  return out;
}

void png_error_handler(png_structp png, png_const_charp message) {
  auto* buffer = static_cast<std::string*>(png_get_error_ptr(png));
  if (buffer) *buffer = message;
  png_longjmp(png, 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

bool decode_png(std::FILE* fp, Decoded& out, std::string& error) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &error,
                                           png_error_handler, png_warning_handler);
  if (!png) {
    error = "out of memory";
    return false;
  }
  png_infop info = png_create_info_struct(png);
  std::vector<png_bytep> rows;
  std::vector<png_byte> buffer;
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    if (error.empty()) error = "corrupt PNG";
    return false;
  }
  png_init_io(png, fp);
  png_read_info(png, info);
  const auto color = png_get_color_type(png, info);
  const auto depth = png_get_bit_depth(png, info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);

  out.width = static_cast<int>(png_get_image_width(png, info));
  out.height = static_cast<int>(png_get_image_height(png, info));
  out.channels = png_get_channels(png, info);
  const int bits = png_get_bit_depth(png, info);
  out.maxval = bits == 16 ? 65535 : 255;
  const std::size_t rowbytes = png_get_rowbytes(png, info);
  buffer.resize(rowbytes * static_cast<std::size_t>(out.height));
  rows.resize(static_cast<std::size_t>(out.height));
  for (int y = 0; y < out.height; ++y) rows[y] = buffer.data() + rowbytes * y;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  const std::size_t count =
      static_cast<std::size_t>(out.width) * out.height * static_cast<std::size_t>(out.channels);
  out.samples.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.samples[i] = bits == 16 ? static_cast<std::uint16_t>((buffer[2 * i] << 8) | buffer[2 * i + 1])
                                : buffer[i];
  }
  return true;
}

PlanarImage read_png(const std::filesystem::path& path) {
  auto fp = open_file(path, "rb");
  Decoded d;
  std::string error;
  if (!decode_png(fp.get(), d, error)) {
    throw Error(ErrorCode::kFormat, path.string() + ": " + error);
  }
  if (d.width <= 0 || d.height <= 0) throw Error(ErrorCode::kFormat, path.string() + ": empty PNG");
  return to_planar(d);
}

class PnmParser {
 public:
  explicit PnmParser(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}

  int header_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw Error(ErrorCode::kFormat, "malformed PNM header");
    }
    long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_++] - '0');
      if (v > 1 << 24) throw Error(ErrorCode::kFormat, "PNM header value out of range");
    }
    return static_cast<int>(v);
  }

  std::string magic() {
    if (bytes_.size() < 2) throw Error(ErrorCode::kFormat, "truncated PNM");
    pos_ = 2;
    return std::string(bytes_.begin(), bytes_.begin() + 2);
  }

  // Exactly one whitespace byte separates the header from binary data.
  void end_header() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw Error(ErrorCode::kFormat, "malformed PNM header");
    }
    ++pos_;
  }

  std::uint16_t binary_sample(bool wide) {
    if (pos_ + (wide ? 2 : 1) > bytes_.size()) throw Error(ErrorCode::kFormat, "truncated PNM");
    if (!wide) return bytes_[pos_++];
    const auto v = static_cast<std::uint16_t>((bytes_[pos_] << 8) | bytes_[pos_ + 1]);
    pos_ += 2;
    return v;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::vector<std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

PlanarImage read_pnm(const std::filesystem::path& path) {
  PnmParser p(read_file_bytes(path));
  const std::string magic = p.magic();
  int channels = 0;
  bool ascii = false;
  if (magic == "P2" || magic == "P5") channels = 1;
  if (magic == "P3" || magic == "P6") channels = 3;
  ascii = magic == "P2" || magic == "P3";
  if (channels == 0) throw Error(ErrorCode::kFormat, path.string() + ": unsupported PNM type");
  Decoded d;
  d.channels = channels;
  d.width = p.header_int();
  d.height = p.header_int();
  d.maxval = p.header_int();
  if (d.width <= 0 || d.height <= 0 || d.maxval <= 0 || d.maxval > 65535) {
    throw Error(ErrorCode::kFormat, path.string() + ": invalid PNM header");
  }
  const std::size_t count =
      static_cast<std::size_t>(d.width) * d.height * static_cast<std::size_t>(channels);
  d.samples.resize(count);
  if (!ascii) p.end_header();
  for (std::size_t i = 0; i < count; ++i) {
    const int v = ascii ? p.header_int() : p.binary_sample(d.maxval > 255);
    if (v > d.maxval) throw Error(ErrorCode::kFormat, path.string() + ": sample exceeds maxval");
    d.samples[i] = static_cast<std::uint16_t>(v);
  }
  return to_planar(d);
}

std::uint16_t quantize(float v, int maxval) {
  const double x = std::clamp(static_cast<double>(v), 0.0, 1.0);
  return static_cast<std::uint16_t>(std::lround(x * maxval));
}

void write_png(const std::filesystem::path& path, const PlanarImage& image, int bits) {
  auto fp = open_file(path, "wb");
  const int maxval = bits == 16 ? 65535 : 255;
  const int channels = image.channels();
  const std::size_t rowbytes =
      static_cast<std::size_t>(image.width()) * channels * (bits == 16 ? 2 : 1);
  std::vector<png_byte> buffer(rowbytes * image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      for (int c = 0; c < channels; ++c) {
        const auto q = quantize(image.at(c, y, x), maxval);
        const std::size_t i = (static_cast<std::size_t>(x) * channels + c);
        if (bits == 16) {
          buffer[rowbytes * y + 2 * i] = static_cast<png_byte>(q >> 8);
          buffer[rowbytes * y + 2 * i + 1] = static_cast<png_byte>(q & 0xff);
        } else {
          buffer[rowbytes * y + i] = static_cast<png_byte>(q);
        }
      }
    }
  }
  std::vector<png_bytep> rows(static_cast<std::size_t>(image.height()));
  for (int y = 0; y < image.height(); ++y) rows[y] = buffer.data() + rowbytes * y;

  std::string error;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &error,
                                            png_error_handler, png_warning_handler);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, info ? &info : nullptr);
    throw Error(ErrorCode::kIo, path.string() + ": PNG encoding failed " + error);
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width()),
               static_cast<png_uint_32>(image.height()), bits,
               channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

void write_pnm(const std::filesystem::path& path, const PlanarImage& image, int bits) {
  const int maxval = bits == 16 ? 65535 : 255;
  const std::string header = std::string(image.channels() == 1 ? "P5" : "P6") + "\n" +
                             std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n" + std::to_string(maxval) +
                             "\n";
  std::vector<std::uint8_t> bytes(header.begin(), header.end());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      for (int c = 0; c < image.channels(); ++c) {
        const auto q = quantize(image.at(c, y, x), maxval);
        if (bits == 16) bytes.push_back(static_cast<std::uint8_t>(q >> 8));
        bytes.push_back(static_cast<std::uint8_t>(q & 0xff));
      }
    }
  }
  write_file_bytes(path, bytes);
}

}  // namespace

bool is_supported_image(const std::filesystem::path& path) {
  const auto ext = lower_extension(path);
  return ext == ".png" || ext == ".ppm" || ext == ".pgm" || ext == ".pnm";
}

PlanarImage read_image(const std::filesystem::path& path) {
  const auto ext = lower_extension(path);
  if (ext == ".png") return read_png(path);
  if (ext == ".ppm" || ext == ".pgm" || ext == ".pnm") return read_pnm(path);
  throw Error(ErrorCode::kFormat, path.string() + ": unsupported image type");
}

void write_image(const std::filesystem::path& path, const PlanarImage& image, int bits) {
  if (bits != 8 && bits != 16) throw Error(ErrorCode::kArgument, "bit depth must be 8 or 16");
  if (image.channels() != 1 && image.channels() != 3) {
    throw Error(ErrorCode::kDimension, "only 1- or 3-channel images can be written");
  }
  const auto ext = lower_extension(path);
  if (ext == ".png") {
    write_png(path, image, bits);
  } else if (ext == ".ppm" || ext == ".pgm" || ext == ".pnm") {
    write_pnm(path, image, bits);
  } else {
    throw Error(ErrorCode::kArgument, path.string() + ": unsupported output type");
  }
}

}  // namespace unraw
