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

#include <filesystem>
#include <string>

#include "unraw/image.hpp"

namespace unraw {

/// True for extensions read_image understands (.png, .ppm, .pgm, .pnm).
bool is_supported_image(const std::filesystem::path& path);

/// Reads an 8- or 16-bit PNG, PPM or PGM as a 3-channel gamma-sRGB image in
/// [0, 1] (value / (2^bits - 1)). Grey inputs are replicated to three
/// channels and alpha is dropped.
PlanarImage read_image(const std::filesystem::path& path);

/// Writes a 1- or 3-channel image, clamped to [0, 1] and quantised to
/// `bits` (8 or 16). The format follows the extension: PNG or PPM/PGM.
void write_image(const std::filesystem::path& path, const PlanarImage& image,
                 int bits = 8);

}  // namespace unraw
