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

#include "onesided/discrete_pmf.h"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_format.h"
#include "onesided/mechanisms.h"

namespace onesided {

double DiscretePmf::at(int64_t x) const {
  if (x < origin || x > max_value()) return 0.0;
  return probs[static_cast<size_t>(x - origin)];
}

double DiscretePmf::total() const {
  return std::accumulate(probs.begin(), probs.end(), 0.0);
}

absl::Status ValidatePmf(const DiscretePmf& pmf) {
  if (pmf.probs.empty()) {
    return absl::InvalidArgumentError("pmf table is empty");
  }
  for (double p : pmf.probs) {
    if (!(p >= 0) || !std::isfinite(p)) {
      return absl::InvalidArgumentError(
          "pmf entries must be finite and non-negative");
    }
  }
  if (!(pmf.truncated_mass >= 0 && pmf.truncated_mass < 1)) {
    return absl::InvalidArgumentError("truncated_mass must lie in [0, 1)");
  }
  const double gap = std::fabs(pmf.total() + pmf.truncated_mass - 1.0);
  if (gap > pmf.tolerance) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "pmf mass differs from 1 by %g (tolerance %g)", gap, pmf.tolerance));
  }
  return absl::OkStatus();
}

absl::StatusOr<DiscretePmf> TabulatePmf(const MechanismSpec& spec) {
  if (absl::Status status = ValidateSpec(spec); !status.ok()) return status;
  if (!spec.integer_valued()) {
    return absl::InvalidArgumentError(
        "trunc_laplace is continuous; discretise it with "
        "DiscretizeContinuous");
  }
  DiscretePmf pmf;
  if (const auto* nb = std::get_if<NegBinParams>(&spec.params)) {
    const int64_t cut = NegativeBinomialQuantile(*nb, kNegBinTabulationMass);
    pmf.probs.reserve(static_cast<size_t>(cut + 1));
    for (int64_t k = 0; k <= cut; ++k) {
      pmf.probs.push_back(NegativeBinomialPmf(*nb, k));
    }
    pmf.truncated_mass = std::max(0.0, 1.0 - pmf.total());
    return pmf;
  }
  const auto top = static_cast<int64_t>(*MechanismMoments(spec).support_max);
  pmf.probs.reserve(static_cast<size_t>(top + 1));
  for (int64_t k = 0; k <= top; ++k) {
    pmf.probs.push_back(Density(spec, static_cast<double>(k)));
  }
  return pmf;
}

}  // namespace onesided
