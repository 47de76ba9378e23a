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

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_format.h"
#include "onesided/mechanisms.h"

namespace onesided {

absl::StatusOr<TruncLaplaceParams> SolveTruncLaplace(
    const PrivacyBudget& budget, bool doubly_truncated) {
  if (absl::Status status = ValidateBudget(budget); !status.ok()) {
    return status;
  }
  const double b = budget.sensitivity / budget.epsilon;
  const double two_delta = 2.0 * budget.delta;
  // ln(2 delta / (2 delta + e^eps - 1)) is always negative.
  const double log_ratio =
      std::log(two_delta) - std::log(two_delta + std::expm1(budget.epsilon));
  const double mu = -b * log_ratio;
  if (!(mu > budget.sensitivity)) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "mode mu = %g must exceed sensitivity %g (requires delta < 1/2, "
        "got %g)",
        mu, budget.sensitivity, budget.delta));
  }
  const double tail = std::exp(-mu / b);
  const double inflation =
      doubly_truncated ? -1.0 / std::expm1(-mu / b) : 1.0 / (1.0 - 0.5 * tail);
  return TruncLaplaceParams{.b = b,
                            .mu = mu,
                            .inflation = inflation,
                            .doubly_truncated = doubly_truncated};
}

double TruncLaplacePdf(const TruncLaplaceParams& params, double x) {
  if (!(x >= 0)) return 0.0;
  if (params.doubly_truncated && x > 2.0 * params.mu) return 0.0;
  return params.inflation / (2.0 * params.b) *
         std::exp(-std::fabs(x - params.mu) / params.b);
}

namespace {

// Mass on [0, x] for 0 <= x <= mu; identical for both truncations.
double LeftCdf(const TruncLaplaceParams& p, double x) {
  return 0.5 * p.inflation *
         (std::exp((x - p.mu) / p.b) - std::exp(-p.mu / p.b));
}

}  // namespace

double TruncLaplaceCdf(const TruncLaplaceParams& params, double x) {
  if (!(x > 0)) return 0.0;
  if (x <= params.mu) return LeftCdf(params, x);
  if (params.doubly_truncated) {
    if (x >= 2.0 * params.mu) return 1.0;
    return 1.0 - LeftCdf(params, 2.0 * params.mu - x);
  }
  return LeftCdf(params, params.mu) -
         0.5 * params.inflation * std::expm1(-(x - params.mu) / params.b);
}

double TruncLaplaceQuantile(const TruncLaplaceParams& params, double u) {
  const double at_mode = LeftCdf(params, params.mu);
  auto left = [&](double v) {
    const double x =
        params.mu + params.b * std::log(2.0 * v / params.inflation +
                                        std::exp(-params.mu / params.b));
    return std::clamp(x, 0.0, params.mu);
  };
  if (u <= at_mode) return left(u);
  if (params.doubly_truncated) {
    return 2.0 * params.mu - left(1.0 - u);
  }
  const double above = u - at_mode;
  return params.mu -
         params.b * std::log1p(-2.0 * above / params.inflation);
}

double TruncLaplaceTailMass(const TruncLaplaceParams& params, double shift) {
  return TruncLaplaceCdf(params, shift);
}

}  // namespace onesided
