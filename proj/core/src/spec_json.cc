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

#include "onesided/spec_json.h"

#include <string>
#include <string_view>
#include <variant>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"
#include "onesided/mechanisms.h"

namespace onesided {
namespace {

using nlohmann::json;

json ParamsToJson(const MechanismParams& params) {
  if (const auto* p = std::get_if<TruncLaplaceParams>(&params)) {
    return {{"b", p->b},
            {"mu", p->mu},
            {"inflation", p->inflation},
            {"doubly_truncated", p->doubly_truncated}};
  }
  if (const auto* p = std::get_if<DoubleGeometricParams>(&params)) {
    return {{"n", p->n},
            {"epsilon", p->epsilon},
            {"inflation", p->inflation},
            {"r", p->r}};
  }
  if (const auto* p = std::get_if<NegBinParams>(&params)) {
    return {{"p", p->p}, {"r", p->r}};
  }
  if (const auto* p = std::get_if<DiscreteUniformParams>(&params)) {
    return {{"N", p->n}};
  }
  return {{"N", std::get<BinomialParams>(params).n}};
}

double Real(const json& obj, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw json::type_error::create(302, absl::StrCat(key, " must be a number"), v);
  return v.get<double>();
}

int64_t Integer(const json& obj, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw json::type_error::create(302, absl::StrCat(key, " must be an integer"), v);
  return v.get<int64_t>();
}

}  // namespace

nlohmann::json SpecToJson(const MechanismSpec& spec) {
  return {
      {"family", std::string(FamilyName(spec.family()))},
      {"budget",
       {{"epsilon", spec.budget.epsilon},
        {"delta", spec.budget.delta},
        {"sensitivity", spec.budget.sensitivity}}},
      {"params", ParamsToJson(spec.params)},
      {"sign", std::string(SignName(spec.sign))},
  };
}

absl::StatusOr<MechanismSpec> SpecFromJson(const nlohmann::json& doc) {
  MechanismSpec spec;
  try {
    absl::StatusOr<Family> family =
        ParseFamily(doc.at("family").get<std::string>());
    if (!family.ok()) return family.status();
    absl::StatusOr<Sign> sign = ParseSign(doc.at("sign").get<std::string>());
    if (!sign.ok()) return sign.status();
    spec.sign = *sign;

    const json& budget = doc.at("budget");
    spec.budget = {.epsilon = Real(budget, "epsilon"),
                   .delta = Real(budget, "delta"),
                   .sensitivity = Real(budget, "sensitivity")};

    const json& params = doc.at("params");
    switch (*family) {
      case Family::kTruncLaplace:
        spec.params = TruncLaplaceParams{
            .b = Real(params, "b"),
            .mu = Real(params, "mu"),
            .inflation = Real(params, "inflation"),
            .doubly_truncated = params.at("doubly_truncated").get<bool>()};
        break;
      case Family::kDoubleGeometric:
        spec.params = DoubleGeometricParams{
            .n = Integer(params, "n"),
            .epsilon = Real(params, "epsilon"),
            .inflation = Real(params, "inflation"),
            .r = Real(params, "r")};
        break;
      case Family::kNegativeBinomial:
        spec.params =
            NegBinParams{.p = Real(params, "p"), .r = Integer(params, "r")};
        break;
      case Family::kDiscreteUniform:
        spec.params = DiscreteUniformParams{.n = Integer(params, "N")};
        break;
      case Family::kBinomial:
        spec.params = BinomialParams{.n = Integer(params, "N")};
        break;
    }
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed mechanism spec: ", e.what()));
  }
  if (absl::Status status = ValidateSpec(spec); !status.ok()) return status;
  return spec;
}

std::string SerializeSpec(const MechanismSpec& spec) {
  return SpecToJson(spec).dump();
}

absl::StatusOr<MechanismSpec> ParseSpec(std::string_view text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    return absl::InvalidArgumentError("mechanism spec is not valid JSON");
  }
  return SpecFromJson(doc);
}

}  // namespace onesided
