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

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "gtest/gtest.h"
#include "nlohmann/json.hpp"
#include "onesided/mechanisms.h"

namespace onesided {
namespace {

using nlohmann::json;

std::vector<MechanismSpec> SampleSpecs() {
  std::vector<MechanismSpec> specs;
  std::mt19937_64 gen(20260417);
  std::uniform_real_distribution<double> log_eps(std::log(0.05), std::log(8.0));
  std::uniform_real_distribution<double> log_delta(std::log(1e-15),
                                                   std::log(1e-2));
  std::uniform_int_distribution<int> sens(1, 4);
  for (int i = 0; i < 60; ++i) {
    const PrivacyBudget budget{.epsilon = std::exp(log_eps(gen)),
                               .delta = std::exp(log_delta(gen)),
                               .sensitivity = static_cast<double>(sens(gen))};
    const Sign sign = (i % 2 == 0) ? Sign::kOvervalued : Sign::kUndervalued;
    for (Family f : {Family::kTruncLaplace, Family::kDoubleGeometric,
                     Family::kNegativeBinomial}) {
      auto spec = SolveMechanism(f, budget, i % 3 != 0, sign);
      if (spec.ok()) specs.push_back(*spec);
    }
  }
  for (int64_t n : {1, 7, 30, 1000}) {
    specs.push_back(*MakeHeuristicSpec(HeuristicFamily::kDiscreteUniform, n, 1));
    specs.push_back(
        *MakeHeuristicSpec(HeuristicFamily::kBinomial, n, 1, Sign::kUndervalued));
  }
  return specs;
}

TEST(SpecJsonTest, RoundTripIsLossless) {
  for (const MechanismSpec& spec : SampleSpecs()) {
    const std::string text = SerializeSpec(spec);
    auto parsed = ParseSpec(text);
    ASSERT_TRUE(parsed.ok()) << parsed.status() << "\n" << text;
    EXPECT_EQ(*parsed, spec) << text;
    EXPECT_EQ(SerializeSpec(*parsed), text);
  }
}

TEST(SpecJsonTest, FieldNames) {
  auto spec = SolveMechanism(Family::kDoubleGeometric,
                             {.epsilon = 0.5, .delta = 1e-6});
  ASSERT_TRUE(spec.ok());
  const json doc = SpecToJson(*spec);
  EXPECT_EQ(doc.at("family"), "double_geometric");
  EXPECT_EQ(doc.at("sign"), "overvalued");
  EXPECT_EQ(doc.at("budget").at("epsilon"), 0.5);
  EXPECT_EQ(doc.at("budget").at("delta"), 1e-6);
  EXPECT_EQ(doc.at("budget").at("sensitivity"), 1.0);
  EXPECT_EQ(doc.at("params").at("n"), 25);
  EXPECT_TRUE(doc.at("params").contains("inflation"));
  EXPECT_TRUE(doc.at("params").contains("r"));
  EXPECT_TRUE(doc.at("params").contains("epsilon"));

  auto negbin = SolveMechanism(Family::kNegativeBinomial,
                               {.epsilon = 0.5, .delta = 1e-6});
  const json nb = SpecToJson(*negbin);
  EXPECT_EQ(nb.at("family"), "negative_binomial");
  EXPECT_EQ(nb.at("params").at("r"), 15);

  auto laplace = SolveMechanism(Family::kTruncLaplace,
                                {.epsilon = 0.5, .delta = 1e-6}, false,
                                Sign::kUndervalued);
  const json lp = SpecToJson(*laplace);
  EXPECT_EQ(lp.at("family"), "trunc_laplace");
  EXPECT_EQ(lp.at("sign"), "undervalued");
  EXPECT_EQ(lp.at("params").at("doubly_truncated"), false);
  EXPECT_EQ(lp.at("params").at("b"), 2.0);

  auto uniform = MakeHeuristicSpec(HeuristicFamily::kDiscreteUniform, 99, 1);
  EXPECT_EQ(SpecToJson(*uniform).at("params").at("N"), 99);
}

TEST(SpecJsonTest, SerializedFormIsCompact) {
  auto spec = SolveMechanism(Family::kNegativeBinomial,
                             {.epsilon = 0.5, .delta = 1e-6});
  const std::string text = SerializeSpec(*spec);
  EXPECT_EQ(text.find('\n'), std::string::npos);
  EXPECT_EQ(text.find(": "), std::string::npos);
}

TEST(SpecJsonTest, RejectsMalformedInput) {
  EXPECT_EQ(ParseSpec("not json").status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(ParseSpec("{}").status().code(),
            absl::StatusCode::kInvalidArgument);

  auto spec = SolveMechanism(Family::kDoubleGeometric,
                             {.epsilon = 0.5, .delta = 1e-6});
  const json good = SpecToJson(*spec);

  json bad = good;
  bad["family"] = "poisson";
  EXPECT_FALSE(SpecFromJson(bad).ok());

  bad = good;
  bad["sign"] = "both";
  EXPECT_FALSE(SpecFromJson(bad).ok());

  bad = good;
  bad["params"]["n"] = 25.5;
  EXPECT_EQ(SpecFromJson(bad).status().code(),
            absl::StatusCode::kInvalidArgument);

  bad = good;
  bad["params"]["r"] = "0.6";
  EXPECT_EQ(SpecFromJson(bad).status().code(),
            absl::StatusCode::kInvalidArgument);

  bad = good;
  bad["budget"].erase("delta");
  EXPECT_EQ(SpecFromJson(bad).status().code(),
            absl::StatusCode::kInvalidArgument);

  bad = good;
  bad["params"]["r"] = 0.9;  // no longer e^{-epsilon}
  EXPECT_EQ(SpecFromJson(bad).status().code(),
            absl::StatusCode::kInvalidArgument);

  bad = good;
  bad["budget"]["delta"] = 1.5;
  EXPECT_FALSE(SpecFromJson(bad).ok());

  bad = good;
  bad["params"] = json::array();
  EXPECT_FALSE(SpecFromJson(bad).ok());
}

TEST(SpecJsonTest, AcceptsHandWrittenDocument) {
  const double p = 1 - std::exp(-0.5);
  const json doc = {
      {"family", "negative_binomial"},
      {"budget", {{"epsilon", 0.5}, {"delta", 1e-6}, {"sensitivity", 1}}},
      {"params", {{"p", p}, {"r", 15}}},
      {"sign", "overvalued"}};
  auto spec = SpecFromJson(doc);
  ASSERT_TRUE(spec.ok()) << spec.status();
  EXPECT_EQ(std::get<NegBinParams>(spec->params).r, 15);
}

}  // namespace
}  // namespace onesided
