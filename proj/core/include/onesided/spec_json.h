// Copyright 2026 The Onesided Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ONESIDED_SPEC_JSON_H_
#define ONESIDED_SPEC_JSON_H_

// MechanismSpec <-> JSON:
//   {"family": "...", "budget": {"epsilon", "delta", "sensitivity"},
//    "params": {...}, "sign": "overvalued" | "undervalued"}

#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "onesided/mechanisms.h"

namespace onesided {

nlohmann::json SpecToJson(const MechanismSpec& spec);
absl::StatusOr<MechanismSpec> SpecFromJson(const nlohmann::json& json);

// Compact single-line form.
std::string SerializeSpec(const MechanismSpec& spec);
absl::StatusOr<MechanismSpec> ParseSpec(std::string_view text);

}  // namespace onesided

#endif  // ONESIDED_SPEC_JSON_H_
