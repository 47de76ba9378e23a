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

#ifndef ONESIDED_VERIFIER_H_
#define ONESIDED_VERIFIER_H_

// Brute-force approximate-DP oracle.
//
// For a noise pmf p and a query shift D, the releases on two neighbouring
// datasets are p and p shifted by D. The smallest delta for which every
// event set S satisfies Pr[S | one] <= e^eps Pr[S | other] + delta is the
// hockey-stick divergence sum_x max(0, p(x) - e^eps q(x)); it is evaluated
// here for both orderings and the larger one is reported. Nothing in this
// file uses the closed-form tail masses from mechanisms.h.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "onesided/discrete_pmf.h"
#include "onesided/mechanisms.h"

namespace onesided {

// kLeft: the failure region sits below the shifted copy, i.e.
//   sum_x max(0, p(x) - e^eps p(x - shift)).
// kRight: the failure region sits above it,
//   sum_x max(0, p(x) - e^eps p(x + shift)).
enum class Direction { kLeft, kRight };

std::string_view DirectionName(Direction direction);

struct PrivacyVerdict {
  double epsilon = 0.0;
  // max(delta_left, delta_right) + pmf.truncated_mass, clamped to [0, 1].
  double delta_required = 0.0;
  Direction direction_worst = Direction::kLeft;
  double delta_left = 0.0;
  double delta_right = 0.0;
};

absl::StatusOr<PrivacyVerdict> BruteForceDelta(const DiscretePmf& pmf,
                                               int64_t shift, double epsilon);

// One verdict per epsilon. `epsilons` must be non-empty and ascending.
absl::StatusOr<std::vector<PrivacyVerdict>> PrivacyCurve(
    const DiscretePmf& pmf, int64_t shift, std::span<const double> epsilons);

// Midpoint-rule discretisation of a truncated Laplace on a grid of width
// `step` anchored at 0. Singly truncated tails are cut where the remaining
// mass drops below 1e-15 and that remainder goes to truncated_mass.
struct DiscretizedLaplace {
  DiscretePmf pmf;
  double step = 0.0;
  // 1 - (midpoint mass before renormalisation) - truncated_mass.
  double quadrature_residual = 0.0;
};

// Requires step <= b / 100 and at least two grid cells over [0, 2 mu].
absl::StatusOr<DiscretizedLaplace> DiscretizeContinuous(
    const TruncLaplaceParams& params, double step);

// The shift in grid cells corresponding to `sensitivity`; errors unless
// sensitivity is an integer multiple of step (relative tolerance 1e-9).
absl::StatusOr<int64_t> ShiftInSteps(double sensitivity, double step);

// Grid width of at most b/1000 with sensitivity an exact multiple of it.
double DefaultLaplaceStep(const PrivacyBudget& budget);

// Tabulates (or discretises, for the Laplace with `laplace_step`) a solved
// spec and runs the oracle at its own epsilon and sensitivity.
absl::StatusOr<PrivacyVerdict> CertifySpec(const MechanismSpec& spec,
                                           double laplace_step = 0.0);

}  // namespace onesided

#endif  // ONESIDED_VERIFIER_H_
