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

#include <initializer_list>
#include <string>

#include "json.hpp"
#include "unraw/forward_pipeline.hpp"
#include "unraw/noise_model.hpp"

namespace unraw::detail {

using Json = nlohmann::json;

/// Rejects objects whose key set differs from `keys`.
void expect_keys(const Json& j, std::initializer_list<const char*> keys,
                 const std::string& context);

Json to_json(const Matrix3& m);
Matrix3 matrix_from_json(const Json& j, const std::string& context);

Json to_json(const PipelineParams& params);
PipelineParams pipeline_params_from_json(const Json& j);

Json to_json(const NoiseParams& params);
NoiseParams noise_params_from_json(const Json& j);

/// Parses text as JSON, mapping parse failures onto kFormat.
Json parse_json(const std::string& text, const std::string& context);

}  // namespace unraw::detail
