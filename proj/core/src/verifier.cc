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

#include "onesided/verifier.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_format.h"
#include "onesided/discrete_pmf.h"
#include "onesided/mechanisms.h"

namespace onesided {

std::string_view DirectionName(Direction direction) {
  return direction == Direction::kLeft ? "left" : "right";
}

absl::StatusOr<PrivacyVerdict> BruteForceDelta(const DiscretePmf& pmf,
                                               int64_t shift, double epsilon) {
  if (absl::Status status = ValidatePmf(pmf); !status.ok()) return status;
  if (shift < 1) return absl::InvalidArgumentError("shift must be >= 1");
  if (!(epsilon >= 0) || std::isnan(epsilon)) {
    return absl::InvalidArgumentError("epsilon must be >= 0");
  }
  const double scale = std::exp(epsilon);
  double left = 0.0;
  double right = 0.0;
  for (int64_t x = pmf.min_value(); x <= pmf.max_value(); ++x) {
    const double p = pmf.at(x);
    left += std::max(0.0, p - scale * pmf.at(x - shift));
    right += std::max(0.0, p - scale * pmf.at(x + shift));
  }
  PrivacyVerdict verdict{.epsilon = epsilon,
                         .direction_worst =
                             left >= right ? Direction::kLeft : Direction::kRight,
                         .delta_left = left,
                         .delta_right = right};
  verdict.delta_required =
      std::clamp(std::max(left, right) + pmf.truncated_mass, 0.0, 1.0);
  return verdict;
}

absl::StatusOr<std::vector<PrivacyVerdict>> PrivacyCurve(
    const DiscretePmf& pmf, int64_t shift, std::span<const double> epsilons) {
  if (epsilons.empty()) {
    return absl::InvalidArgumentError("epsilon list is empty");
  }
  if (!std::is_sorted(epsilons.begin(), epsilons.end())) {
    return absl::InvalidArgumentError("epsilon list must be ascending");
  }
  std::vector<PrivacyVerdict> curve;
  curve.reserve(epsilons.size());
  for (double eps : epsilons) {
    absl::StatusOr<PrivacyVerdict> verdict = BruteForceDelta(pmf, shift, eps);
    if (!verdict.ok()) return verdict.status();
    curve.push_back(*verdict);
  }
  return curve;
}

absl::StatusOr<DiscretizedLaplace> DiscretizeContinuous(
    const TruncLaplaceParams& params, double step) {
  if (!(step > 0) || !std::isfinite(step)) {
    return absl::InvalidArgumentError("step must be > 0");
  }
  if (step > params.b / 100.0) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "step %g is too coarse; must be <= b/100 = %g", step, params.b / 100));
  }
  double upper = 2.0 * params.mu;
  double truncated = 0.0;
  if (!params.doubly_truncated) {
    upper = params.mu + params.b * std::log(params.inflation / 2e-15);
    truncated = 1.0 - TruncLaplaceCdf(params, upper);
  }
  const double cells_real = std::ceil(upper / step);
  if (cells_real < 2) {
    return absl::InvalidArgumentError("step leaves fewer than two grid cells");
  }
  const auto cells = static_cast<int64_t>(cells_real);

  DiscretizedLaplace out;
  out.step = step;
  out.pmf.probs.reserve(static_cast<size_t>(cells));
  double raw = 0.0;
  for (int64_t k = 0; k < cells; ++k) {
    const double lo = static_cast<double>(k) * step;
    const double width = std::min(step, upper - lo);
    const double mass = width * TruncLaplacePdf(params, lo + 0.5 * width);
    out.pmf.probs.push_back(mass);
    raw += mass;
  }
  out.quadrature_residual = 1.0 - raw - truncated;
  const double scale = (1.0 - truncated) / raw;
  for (double& p : out.pmf.probs) p *= scale;
  out.pmf.truncated_mass = truncated;
  return out;
}

absl::StatusOr<int64_t> ShiftInSteps(double sensitivity, double step) {
  const double cells = sensitivity / step;
  const double rounded = std::round(cells);
  if (!(rounded >= 1) || std::fabs(cells - rounded) > 1e-9 * cells) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "sensitivity %g is not an integer multiple of step %g", sensitivity,
        step));
  }
  return static_cast<int64_t>(rounded);
}

double DefaultLaplaceStep(const PrivacyBudget& budget) {
  // Finest grid of b/1000 that still divides the sensitivity evenly.
  return budget.sensitivity / std::ceil(1000.0 * budget.epsilon);
}

absl::StatusOr<PrivacyVerdict> CertifySpec(const MechanismSpec& spec,
                                           double laplace_step) {
  if (absl::Status status = ValidateSpec(spec); !status.ok()) return status;
  if (const auto* laplace = std::get_if<TruncLaplaceParams>(&spec.params)) {
    const double step =
        laplace_step > 0 ? laplace_step : DefaultLaplaceStep(spec.budget);
    absl::StatusOr<int64_t> shift = ShiftInSteps(spec.budget.sensitivity, step);
    if (!shift.ok()) return shift.status();
    absl::StatusOr<DiscretizedLaplace> table =
        DiscretizeContinuous(*laplace, step);
    if (!table.ok()) return table.status();
    return BruteForceDelta(table->pmf, *shift, spec.budget.epsilon);
  }
  absl::StatusOr<DiscretePmf> table = TabulatePmf(spec);
  if (!table.ok()) return table.status();
  return BruteForceDelta(*table, static_cast<int64_t>(spec.budget.sensitivity),
                         spec.budget.epsilon);
}

}  // namespace onesided
