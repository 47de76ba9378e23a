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

#ifndef ONESIDED_PRIVACY_BUDGET_H_
#define ONESIDED_PRIVACY_BUDGET_H_

#include <cstdint>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace onesided {

// The (epsilon, delta, sensitivity) triple every solver consumes.
//
// Sensitivity is stored as a real so the Laplace family can accept
// fractional shifts; integer mechanisms reject non-integer values through
// IntegerSensitivity().
struct PrivacyBudget {
  double epsilon = 0.0;
  double delta = 0.0;
  double sensitivity = 1.0;

  friend bool operator==(const PrivacyBudget&, const PrivacyBudget&) = default;
};

// Checks epsilon > 0, 0 < delta < 1 and sensitivity > 0 (all finite).
absl::Status ValidateBudget(const PrivacyBudget& budget);

// As ValidateBudget, and additionally requires an integral sensitivity >= 1.
absl::StatusOr<int64_t> IntegerSensitivity(const PrivacyBudget& budget);

}  // namespace onesided

#endif  // ONESIDED_PRIVACY_BUDGET_H_
