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

#ifndef ONESIDED_SAMPLER_H_
#define ONESIDED_SAMPLER_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "onesided/mechanisms.h"
#include "onesided/rng.h"

namespace onesided {

// Inverse-CDF sampler for one MechanismSpec.
//
// Integer families search a cumulative table with one 53-bit uniform per
// draw. The negative binomial table stops at kNegBinTabulationMass; draws
// beyond it continue the cumulative walk with the pmf recurrence. The
// truncated Laplace inverts its closed-form CDF.
class NoiseSampler {
 public:
  static absl::StatusOr<NoiseSampler> Create(const MechanismSpec& spec);

  const MechanismSpec& spec() const { return spec_; }

  double Sample(RngStream& rng) const;
  // For the Laplace, the floor of a continuous draw.
  int64_t SampleInteger(RngStream& rng) const;
  std::vector<double> SampleBatch(RngStream& rng, int64_t count) const;

 private:
  explicit NoiseSampler(MechanismSpec spec) : spec_(std::move(spec)) {}

  int64_t InvertTable(double u) const;

  MechanismSpec spec_;
  int64_t origin_ = 0;
  std::vector<double> cdf_;
};

// One-shot helpers; they rebuild the table on every call.
absl::StatusOr<double> Sample(const MechanismSpec& spec, RngStream& rng);
absl::StatusOr<std::vector<double>> SampleBatch(const MechanismSpec& spec,
                                                RngStream& rng, int64_t count);

}  // namespace onesided

#endif  // ONESIDED_SAMPLER_H_
