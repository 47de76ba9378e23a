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

#include "onesided/privacy_budget.h"

#include <cmath>
#include <cstdint>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace onesided {

absl::Status ValidateBudget(const PrivacyBudget& budget) {
  if (!std::isfinite(budget.epsilon) || budget.epsilon <= 0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("epsilon must be > 0, got %g", budget.epsilon));
  }
  if (!(budget.delta > 0 && budget.delta < 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("delta must lie in (0, 1), got %g", budget.delta));
  }
  if (!std::isfinite(budget.sensitivity) || budget.sensitivity <= 0) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "sensitivity must be > 0, got %g", budget.sensitivity));
  }
  return absl::OkStatus();
}

absl::StatusOr<int64_t> IntegerSensitivity(const PrivacyBudget& budget) {
  if (absl::Status status = ValidateBudget(budget); !status.ok()) {
    return status;
  }
  if (budget.sensitivity < 1 ||
      budget.sensitivity != std::floor(budget.sensitivity) ||
      budget.sensitivity > 1e15) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "integer mechanisms need an integral sensitivity >= 1, got %g",
        budget.sensitivity));
  }
  return static_cast<int64_t>(budget.sensitivity);
}

}  // namespace onesided
