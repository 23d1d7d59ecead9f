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

#include "unraw/profile.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json_io.hpp"
#include "unraw/error.hpp"
#include "unraw/rng.hpp"

namespace unraw {

namespace detail {

void expect_keys(const Json& j, std::initializer_list<const char*> keys,
                 const std::string& context) {
  if (!j.is_object()) throw Error(ErrorCode::kConfig, context + ": expected an object");
  for (const char* k : keys) {
    if (!j.contains(k)) {
      throw Error(ErrorCode::kConfig, context + ": missing field '" + k + "'");
    }
  }
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || item.key() == k;
    if (!known) {
      throw Error(ErrorCode::kConfig, context + ": unknown field '" + item.key() + "'");
    }
  }
}

namespace {

double number(const Json& j, const std::string& context) {
  if (!j.is_number()) throw Error(ErrorCode::kConfig, context + ": expected a number");
  return j.get<double>();
}

std::string text(const Json& j, const std::string& context) {
  if (!j.is_string()) throw Error(ErrorCode::kConfig, context + ": expected a string");
  return j.get<std::string>();
}

Range range(const Json& j, const std::string& context) {
  if (!j.is_array() || j.size() != 2) {
    throw Error(ErrorCode::kConfig, context + ": expected [lo, hi]");
  }
  return {number(j[0], context), number(j[1], context)};
}

Json range_json(const Range& r) { return Json::array({r.lo, r.hi}); }

}  // namespace

Json to_json(const Matrix3& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(Json::array({row[0], row[1], row[2]}));
  return out;
}

Matrix3 matrix_from_json(const Json& j, const std::string& context) {
  if (!j.is_array() || j.size() != 3) {
    throw Error(ErrorCode::kConfig, context + ": expected a 3x3 matrix");
  }
  Matrix3 m{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[i].is_array() || j[i].size() != 3) {
      throw Error(ErrorCode::kConfig, context + ": expected a 3x3 matrix");
    }
    for (std::size_t k = 0; k < 3; ++k) m[i][k] = number(j[i][k], context);
  }
  return m;
}

Json to_json(const PipelineParams& p) {
  Json j;
  j["wb_gains"] = Json::array({p.wb_gains[0], p.wb_gains[1], p.wb_gains[2]});
  j["inverse_digital_gain"] = p.inverse_digital_gain;
  j["ccm"] = to_json(p.ccm);
  j["bayer_pattern"] = std::string(to_string(p.bayer_pattern));
  j["gamma_epsilon"] = p.gamma_epsilon;
  j["highlight_threshold"] = p.highlight_threshold;
  j["tone_map_enabled"] = p.tone_map_enabled;
  return j;
}

PipelineParams pipeline_params_from_json(const Json& j) {
  const std::string ctx = "pipeline params";
  expect_keys(j,
              {"wb_gains", "inverse_digital_gain", "ccm", "bayer_pattern", "gamma_epsilon",
               "highlight_threshold", "tone_map_enabled"},
              ctx);
  PipelineParams p;
  const auto& wb = j["wb_gains"];
  if (!wb.is_array() || wb.size() != 3) throw Error(ErrorCode::kConfig, ctx + ": wb_gains");
  for (std::size_t c = 0; c < 3; ++c) p.wb_gains[c] = number(wb[c], ctx);
  p.inverse_digital_gain = number(j["inverse_digital_gain"], ctx);
  p.ccm = matrix_from_json(j["ccm"], ctx);
  p.bayer_pattern = bayer_pattern_from_string(text(j["bayer_pattern"], ctx));
  p.gamma_epsilon = number(j["gamma_epsilon"], ctx);
  p.highlight_threshold = number(j["highlight_threshold"], ctx);
  if (!j["tone_map_enabled"].is_boolean()) {
    throw Error(ErrorCode::kConfig, ctx + ": tone_map_enabled must be a boolean");
  }
  p.tone_map_enabled = j["tone_map_enabled"].get<bool>();
  p.validate();
  return p;
}

Json to_json(const NoiseParams& p) {
  return Json{{"lambda_shot", p.lambda_shot}, {"lambda_read", p.lambda_read}};
}

NoiseParams noise_params_from_json(const Json& j) {
  expect_keys(j, {"lambda_shot", "lambda_read"}, "noise params");
  NoiseParams p{number(j["lambda_shot"], "noise params"),
                number(j["lambda_read"], "noise params")};
  p.validate();
  return p;
}

Json parse_json(const std::string& text, const std::string& context) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kFormat, context + ": " + e.what());
  }
}

}  // namespace detail

using detail::Json;

void CameraProfile::validate() const {
  if (name.empty()) throw Error(ErrorCode::kConfig, "profile name is empty");
  unprocess.validate();
  noise.validate();
}

CameraProfile default_profile() {
  CameraProfile p;
  p.name = "default";
  p.description =
      "Illustrative profile. The identity and example-* colour matrices are "
      "placeholders with rows summing to 1; they do not describe real cameras.";
  p.unprocess.ccm_set.matrices = {
      {"identity", kIdentity3},
      {"example-a", {{{1.72, -0.56, -0.16}, {-0.22, 1.52, -0.30}, {0.04, -0.62, 1.58}}}},
      {"example-b", {{{1.58, -0.41, -0.17}, {-0.29, 1.61, -0.32}, {-0.02, -0.48, 1.50}}}},
      {"example-c", {{{1.86, -0.74, -0.12}, {-0.18, 1.44, -0.26}, {0.06, -0.71, 1.65}}}},
  };
  return p;
}

namespace {

Json profile_json(const CameraProfile& p) {
  Json ccms = Json::array();
  for (const auto& m : p.unprocess.ccm_set.matrices) {
    ccms.push_back(Json{{"name", m.name}, {"matrix", detail::to_json(m.matrix)}});
  }
  const auto& u = p.unprocess;
  Json j;
  j["schema_version"] = CameraProfile::kSchemaVersion;
  j["name"] = p.name;
  j["description"] = p.description;
  j["bayer_pattern"] = std::string(to_string(u.bayer_pattern));
  j["ccms"] = ccms;
  j["white_balance"] = Json{{"red_gain", detail::range_json(u.red_gain)},
                            {"blue_gain", detail::range_json(u.blue_gain)}};
  j["inverse_digital_gain"] = Json{{"mean", u.inverse_digital_gain_mean},
                                   {"stddev", u.inverse_digital_gain_stddev},
                                   {"bounds", detail::range_json(u.inverse_digital_gain_bounds)}};
  j["highlight_threshold"] = u.highlight_threshold;
  j["gamma_epsilon"] = u.gamma_epsilon;
  j["noise"] = Json{{"shot_range", Json::array({p.noise.shot_min, p.noise.shot_max})},
                    {"read_slope", p.noise.read_slope},
                    {"read_intercept", p.noise.read_intercept},
                    {"read_residual_stddev", p.noise.read_residual_stddev},
                    {"log_base", std::string(to_string(p.noise.log_base))}};
  return j;
}

}  // namespace

CameraProfile profile_from_json(std::string_view text_in) {
  using detail::expect_keys;
  const Json j = detail::parse_json(std::string(text_in), "profile");
  expect_keys(j,
              {"schema_version", "name", "description", "bayer_pattern", "ccms",
               "white_balance", "inverse_digital_gain", "highlight_threshold",
               "gamma_epsilon", "noise"},
              "profile");
  if (!j["schema_version"].is_number_integer() ||
      j["schema_version"].get<int>() != CameraProfile::kSchemaVersion) {
    throw Error(ErrorCode::kConfig, "profile: unsupported schema_version");
  }
  CameraProfile p;
  p.name = detail::text(j["name"], "profile.name");
  p.description = detail::text(j["description"], "profile.description");
  auto& u = p.unprocess;
  u.bayer_pattern = bayer_pattern_from_string(detail::text(j["bayer_pattern"], "profile"));

  const auto& ccms = j["ccms"];
  if (!ccms.is_array()) throw Error(ErrorCode::kConfig, "profile.ccms: expected an array");
  for (const auto& entry : ccms) {
    expect_keys(entry, {"name", "matrix"}, "profile.ccms[]");
    u.ccm_set.matrices.push_back({detail::text(entry["name"], "profile.ccms[].name"),
                                  detail::matrix_from_json(entry["matrix"], "profile.ccms[]")});
  }

  const auto& wb = j["white_balance"];
  expect_keys(wb, {"red_gain", "blue_gain"}, "profile.white_balance");
  u.red_gain = detail::range(wb["red_gain"], "profile.white_balance.red_gain");
  u.blue_gain = detail::range(wb["blue_gain"], "profile.white_balance.blue_gain");

  const auto& dg = j["inverse_digital_gain"];
  expect_keys(dg, {"mean", "stddev", "bounds"}, "profile.inverse_digital_gain");
  u.inverse_digital_gain_mean = detail::number(dg["mean"], "profile.inverse_digital_gain");
  u.inverse_digital_gain_stddev = detail::number(dg["stddev"], "profile.inverse_digital_gain");
  u.inverse_digital_gain_bounds = detail::range(dg["bounds"], "profile.inverse_digital_gain");

  u.highlight_threshold = detail::number(j["highlight_threshold"], "profile");
  u.gamma_epsilon = detail::number(j["gamma_epsilon"], "profile");

  const auto& n = j["noise"];
  expect_keys(n,
              {"shot_range", "read_slope", "read_intercept", "read_residual_stddev",
               "log_base"},
              "profile.noise");
  const Range shot = detail::range(n["shot_range"], "profile.noise.shot_range");
  p.noise.shot_min = shot.lo;
  p.noise.shot_max = shot.hi;
  p.noise.read_slope = detail::number(n["read_slope"], "profile.noise");
  p.noise.read_intercept = detail::number(n["read_intercept"], "profile.noise");
  p.noise.read_residual_stddev = detail::number(n["read_residual_stddev"], "profile.noise");
  p.noise.log_base = log_base_from_string(detail::text(n["log_base"], "profile.noise"));

  p.validate();
  return p;
}

std::string profile_to_json(const CameraProfile& profile) {
  return profile_json(profile).dump(2) + "\n";
}

CameraProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open profile " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return profile_from_json(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

CameraProfile resolve_profile(std::string_view name_or_path) {
  if (name_or_path.empty() || name_or_path == "default") return default_profile();
  const std::filesystem::path direct(name_or_path);
  if (std::filesystem::exists(direct)) return load_profile(direct);
  if (const char* env = std::getenv("UNRAW_PROFILE_PATH")) {
    std::string dirs(env);
    std::size_t start = 0;
    while (start <= dirs.size()) {
      const std::size_t end = std::min(dirs.find(':', start), dirs.size());
      const std::filesystem::path dir = dirs.substr(start, end - start);
      if (!dir.empty()) {
        for (const auto& candidate :
             {dir / std::string(name_or_path), dir / (std::string(name_or_path) + ".json")}) {
          if (std::filesystem::exists(candidate)) return load_profile(candidate);
        }
      }
      start = end + 1;
    }
  }
  throw Error(ErrorCode::kConfig, "profile '" + std::string(name_or_path) + "' not found");
}

std::string hex64(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[value & 0xf];
    value >>= 4;
  }
  return out;
}

std::string config_hash(const CameraProfile& profile) {
  return hex64(fnv1a64(profile_json(profile).dump()));
}

}  // namespace unraw
