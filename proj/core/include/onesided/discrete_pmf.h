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

#ifndef ONESIDED_DISCRETE_PMF_H_
#define ONESIDED_DISCRETE_PMF_H_

#include <cstdint>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "onesided/mechanisms.h"

namespace onesided {

// Cut point for tabulating the unbounded negative binomial.
inline constexpr double kNegBinTabulationMass = 1.0 - 1e-12;

// Explicit finite probability table. probs[i] is the mass at origin + i.
//
// `truncated_mass` is probability that the table deliberately omits (the
// tail of an unbounded family); the verifier adds it to every delta it
// reports. `tolerance` bounds |sum(probs) + truncated_mass - 1|.
struct DiscretePmf {
  int64_t origin = 0;
  std::vector<double> probs;
  double truncated_mass = 0.0;
  double tolerance = 1e-9;

  int64_t min_value() const { return origin; }
  int64_t max_value() const {
    return origin + static_cast<int64_t>(probs.size()) - 1;
  }
  // Mass at x; zero outside the table.
  double at(int64_t x) const;
  double total() const;
};

absl::Status ValidatePmf(const DiscretePmf& pmf);

// Full support for bounded integer families; negative binomial up to the
// kNegBinTabulationMass quantile with the remainder in truncated_mass.
// The Laplace is rejected (see DiscretizeContinuous in verifier.h).
absl::StatusOr<DiscretePmf> TabulatePmf(const MechanismSpec& spec);

}  // namespace onesided

#endif  // ONESIDED_DISCRETE_PMF_H_
