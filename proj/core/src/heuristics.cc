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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_format.h"
#include "onesided/mechanisms.h"

namespace onesided {
namespace {

double LogChoose(int64_t n, int64_t k) {
  const int64_t m = std::min(k, n - k);
  if (m <= 1024) {
    // Product form; lgamma differences lose ~1e-14 relative here.
    double sum = 0.0;
    for (int64_t i = 1; i <= m; ++i) {
      sum += std::log(static_cast<double>(n - m + i) / static_cast<double>(i));
    }
    return sum;
  }
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace

absl::StatusOr<HeuristicAccounting> AccountHeuristic(HeuristicFamily family,
                                                     int64_t n,
                                                     int64_t sensitivity) {
  if (n < 1 || sensitivity < 1) {
    return absl::InvalidArgumentError("N and sensitivity must be >= 1");
  }
  if (family == HeuristicFamily::kDiscreteUniform) {
    return HeuristicAccounting{
        .epsilon = 0.0,
        .delta = std::min(1.0, static_cast<double>(sensitivity) /
                                   static_cast<double>(n + 1))};
  }
  // A shift past the whole support leaves nothing in common.
  if (sensitivity > n) return HeuristicAccounting{.epsilon = 0.0, .delta = 1.0};
  double delta = 0.0;
  for (int64_t j = 0; j < sensitivity; ++j) {
    delta += std::exp(LogChoose(n, j) -
                      static_cast<double>(n) * std::numbers::ln2);
  }
  return HeuristicAccounting{.epsilon = LogChoose(n, sensitivity),
                             .delta = delta};
}

absl::StatusOr<MechanismSpec> MakeHeuristicSpec(HeuristicFamily family,
                                                int64_t n, int64_t sensitivity,
                                                Sign sign) {
  absl::StatusOr<HeuristicAccounting> accounting =
      AccountHeuristic(family, n, sensitivity);
  if (!accounting.ok()) return accounting.status();
  MechanismSpec spec{
      .budget = {.epsilon = accounting->epsilon,
                 .delta = accounting->delta,
                 .sensitivity = static_cast<double>(sensitivity)},
      .sign = sign};
  if (family == HeuristicFamily::kDiscreteUniform) {
    spec.params = DiscreteUniformParams{.n = n};
  } else {
    spec.params = BinomialParams{.n = n};
  }
  return spec;
}

double DiscreteUniformPmf(const DiscreteUniformParams& params, int64_t k) {
  if (k < 0 || k > params.n) return 0.0;
  return 1.0 / static_cast<double>(params.n + 1);
}

double BinomialLogPmf(const BinomialParams& params, int64_t k) {
  if (k < 0 || k > params.n) return -INFINITY;
  return LogChoose(params.n, k) -
         static_cast<double>(params.n) * std::numbers::ln2;
}

double BinomialPmf(const BinomialParams& params, int64_t k) {
  if (k < 0 || k > params.n) return 0.0;
  return std::exp(BinomialLogPmf(params, k));
}

}  // namespace onesided
