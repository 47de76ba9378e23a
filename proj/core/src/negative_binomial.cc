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
#include <limits>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "onesided/mechanisms.h"

namespace onesided {

double NegativeBinomialLogPmf(const NegBinParams& params, int64_t k) {
  if (k < 0) return -std::numeric_limits<double>::infinity();
  const double kd = static_cast<double>(k);
  const double rd = static_cast<double>(params.r);
  // log C(k + r - 1, r - 1). For the small r the solvers produce, the
  // product form prod_{i<r} (1 + k/i) avoids the cancellation between two
  // large lgamma values.
  double log_choose = 0.0;
  if (params.r <= 256) {
    for (int64_t i = 1; i < params.r; ++i) {
      log_choose += std::log1p(kd / static_cast<double>(i));
    }
  } else {
    log_choose = std::lgamma(kd + rd) - std::lgamma(rd) - std::lgamma(kd + 1.0);
  }
  return log_choose + kd * std::log1p(-params.p) + rd * std::log(params.p);
}

double NegativeBinomialPmf(const NegBinParams& params, int64_t k) {
  if (k < 0) return 0.0;
  return std::exp(NegativeBinomialLogPmf(params, k));
}

double NegativeBinomialTailMass(const NegBinParams& params, int64_t shift) {
  double mass = 0.0;
  for (int64_t j = 0; j < shift; ++j) mass += NegativeBinomialPmf(params, j);
  return mass;
}

int64_t NegativeBinomialQuantile(const NegBinParams& params, double mass) {
  const double rd = static_cast<double>(params.r);
  const double log_q = std::log1p(-params.p);
  const double mode =
      params.r > 1 ? (rd - 1.0) * (1.0 - params.p) / params.p : 0.0;
  double log_pmf = rd * std::log(params.p);
  // Neumaier summation: the cut sits 1e-12 below one.
  double sum = 0.0;
  double carry = 0.0;
  for (int64_t k = 0;; ++k) {
    const double term = std::exp(log_pmf);
    const double t = sum + term;
    if (std::fabs(sum) >= term) {
      carry += (sum - t) + term;
    } else {
      carry += (term - t) + sum;
    }
    sum = t;
    if (sum + carry >= mass) return k;
    // Past the mode the terms only shrink; once they vanish the cut is as
    // close to one as double precision allows.
    if (static_cast<double>(k) > mode && term < 1e-300) return k;
    const double kd = static_cast<double>(k);
    log_pmf += std::log(kd + rd) - std::log(kd + 1.0) + log_q;
  }
}

absl::StatusOr<NegBinParams> SolveNegativeBinomial(
    const PrivacyBudget& budget) {
  absl::StatusOr<int64_t> sensitivity = IntegerSensitivity(budget);
  if (!sensitivity.ok()) return sensitivity.status();
  const double p =
      -std::expm1(-budget.epsilon / static_cast<double>(*sensitivity));

  if (*sensitivity == 1) {
    const double r_real = std::ceil(std::log(budget.delta) / std::log(p));
    return NegBinParams{.p = p,
                        .r = std::max<int64_t>(1, static_cast<int64_t>(r_real))};
  }

  auto fits = [&](int64_t r) {
    return NegativeBinomialTailMass(NegBinParams{.p = p, .r = r},
                                    *sensitivity) <= budget.delta;
  };
  int64_t hi = 1;
  while (!fits(hi)) {
    if (hi > (int64_t{1} << 40)) {
      return absl::InternalError(
          "negative binomial search exceeded 2^40 without meeting delta");
    }
    hi *= 2;
  }
  int64_t lo = hi / 2;
  while (hi - lo > 1) {
    const int64_t mid = lo + (hi - lo) / 2;
    if (fits(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return NegBinParams{.p = p, .r = hi};
}

}  // namespace onesided
