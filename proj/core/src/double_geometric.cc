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
#include <cstdlib>
#include <limits>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_format.h"
#include "onesided/mechanisms.h"

namespace onesided {
namespace {

// Per-unit decay rate: -ln r.
double DecayRate(const DoubleGeometricParams& params) {
  return -std::log(params.r);
}

}  // namespace

double DoubleGeometricInflation(double r, int64_t n) {
  return (1.0 - r) / (1.0 + r - 2.0 * std::pow(r, static_cast<double>(n + 1)));
}

DoubleGeometricParams MakeDoubleGeometric(int64_t n, double epsilon,
                                          int64_t sensitivity) {
  const double rate = epsilon / static_cast<double>(sensitivity);
  const double r = std::exp(-rate);
  // (1 - r) written via expm1 so small epsilon keeps its precision.
  const double inflation =
      -std::expm1(-rate) /
      (1.0 + r - 2.0 * std::exp(-rate * static_cast<double>(n + 1)));
  return DoubleGeometricParams{
      .n = n, .epsilon = epsilon, .inflation = inflation, .r = r};
}

double DoubleGeometricLogPmf(const DoubleGeometricParams& params, int64_t x) {
  if (x < 0 || x > 2 * params.n) {
    return -std::numeric_limits<double>::infinity();
  }
  return std::log(params.inflation) -
         DecayRate(params) * static_cast<double>(std::llabs(params.n - x));
}

double DoubleGeometricPmf(const DoubleGeometricParams& params, int64_t x) {
  if (x < 0 || x > 2 * params.n) return 0.0;
  return std::exp(DoubleGeometricLogPmf(params, x));
}

double DoubleGeometricTailMass(const DoubleGeometricParams& params,
                               int64_t shift) {
  const int64_t top = 2 * params.n;
  double mass = 0.0;
  for (int64_t x = std::max<int64_t>(0, top - shift + 1); x <= top; ++x) {
    mass += DoubleGeometricPmf(params, x);
  }
  return mass;
}

absl::StatusOr<DoubleGeometricParams> SolveDoubleGeometric(
    const PrivacyBudget& budget) {
  absl::StatusOr<int64_t> sensitivity = IntegerSensitivity(budget);
  if (!sensitivity.ok()) return sensitivity.status();
  const double eps = budget.epsilon;
  const double delta = budget.delta;

  if (*sensitivity == 1) {
    const double r = std::exp(-eps);
    const double one_minus_r = -std::expm1(-eps);
    const double arg = delta * (1.0 + r) / (one_minus_r + 2.0 * r * delta);
    const double n_real = std::ceil(-std::log(arg) / eps);
    const auto n = std::max<int64_t>(1, static_cast<int64_t>(n_real));
    return MakeDoubleGeometric(n, eps, 1);
  }

  // Tail mass is decreasing in n: double until it fits, then bisect.
  auto fits = [&](int64_t n) {
    return DoubleGeometricTailMass(MakeDoubleGeometric(n, eps, *sensitivity),
                                   *sensitivity) <= delta;
  };
  int64_t hi = 1;
  while (!fits(hi)) {
    if (hi > (int64_t{1} << 40)) {
      return absl::InternalError(
          "double geometric search exceeded 2^40 without meeting delta");
    }
    hi *= 2;
  }
  int64_t lo = hi / 2;  // fits(lo) is false unless lo == 0
  while (hi - lo > 1) {
    const int64_t mid = lo + (hi - lo) / 2;
    if (fits(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return MakeDoubleGeometric(hi, eps, *sensitivity);
}

}  // namespace onesided
