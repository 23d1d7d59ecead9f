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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace unraw {

/// Binary container for raw data.
///
///   "URAW"                      4 bytes
///   version                     u32 (1)
///   height, width, channels     u32 each
///   dtype                       u32 (1 = float32)
///   block count                 u32
///   blocks                      channels * height * width float32 each,
///                               planar
///   sidecar length              u64
///   sidecar                     UTF-8 JSON
///
/// Integers and samples are little-endian.
struct Container {
  static constexpr std::uint32_t kVersion = 1;
  static constexpr std::uint32_t kDtypeFloat32 = 1;

  std::uint32_t height = 0;
  std::uint32_t width = 0;
  std::uint32_t channels = 0;
  std::vector<std::vector<float>> blocks;
  std::string sidecar;

  std::size_t block_size() const noexcept {
    return static_cast<std::size_t>(height) * width * channels;
  }
};

std::vector<std::uint8_t> encode_container(const Container& container);
Container decode_container(std::span<const std::uint8_t> bytes);

void write_container(const std::filesystem::path& path, const Container& container);
Container read_container(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
/// Writes to a temporary sibling and renames it into place.
void write_file_bytes(const std::filesystem::path& path,
                      std::span<const std::uint8_t> bytes);

}  // namespace unraw
