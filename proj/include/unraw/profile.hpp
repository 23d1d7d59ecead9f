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
#include <string_view>

#include "unraw/noise_model.hpp"
#include "unraw/unprocess.hpp"

namespace unraw {

/// Everything needed to imitate one family of cameras.
struct CameraProfile {
  static constexpr int kSchemaVersion = 1;

  std::string name = "default";
  std::string description;
  UnprocessConfig unprocess;
  NoiseDistributionConfig noise;

  void validate() const;
  friend bool operator==(const CameraProfile&, const CameraProfile&) = default;
};

/// Built-in profile. Its CCM set is illustrative and does not describe any
/// real camera.
CameraProfile default_profile();

/// Strict parse: unknown or missing fields and a wrong schema version are
/// kConfig errors.
CameraProfile profile_from_json(std::string_view text);
std::string profile_to_json(const CameraProfile& profile);
CameraProfile load_profile(const std::filesystem::path& path);

/// Resolves a profile argument. "default" is the built-in profile; an
/// existing path is loaded directly; otherwise `<name>` and `<name>.json`
/// are looked up in each directory of UNRAW_PROFILE_PATH (':'-separated).
CameraProfile resolve_profile(std::string_view name_or_path);

/// FNV-1a of the canonical JSON, as 16 hex digits.
std::string config_hash(const CameraProfile& profile);

std::string hex64(std::uint64_t value);

}  // namespace unraw
