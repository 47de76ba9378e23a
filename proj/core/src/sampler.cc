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

#include "onesided/sampler.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "onesided/discrete_pmf.h"
#include "onesided/mechanisms.h"
#include "onesided/rng.h"

namespace onesided {

absl::StatusOr<NoiseSampler> NoiseSampler::Create(const MechanismSpec& spec) {
  if (absl::Status status = ValidateSpec(spec); !status.ok()) return status;
  NoiseSampler sampler(spec);
  if (!spec.integer_valued()) return sampler;

  absl::StatusOr<DiscretePmf> table = TabulatePmf(spec);
  if (!table.ok()) return table.status();
  sampler.origin_ = table->origin;
  sampler.cdf_.resize(table->probs.size());
  double running = 0.0;
  for (size_t i = 0; i < table->probs.size(); ++i) {
    running += table->probs[i];
    sampler.cdf_[i] = running;
  }
  // Bounded tables absorb rounding in the last cell; the negative binomial
  // keeps its true cumulative so draws past the cut walk onward.
  if (spec.bounded_support()) sampler.cdf_.back() = 1.0;
  return sampler;
}

int64_t NoiseSampler::InvertTable(double u) const {
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it != cdf_.end()) {
    return origin_ + static_cast<int64_t>(it - cdf_.begin());
  }
  // Past the negative binomial table: continue the cumulative walk.
  const auto& nb = std::get<NegBinParams>(spec_.params);
  int64_t k = origin_ + static_cast<int64_t>(cdf_.size()) - 1;
  double cumulative = cdf_.back();
  double log_pmf = NegativeBinomialLogPmf(nb, k);
  const double rd = static_cast<double>(nb.r);
  const double log_q = std::log1p(-nb.p);
  for (;;) {
    const double kd = static_cast<double>(k);
    log_pmf += std::log(kd + rd) - std::log(kd + 1.0) + log_q;
    ++k;
    const double term = std::exp(log_pmf);
    cumulative += term;
    if (u < cumulative || term == 0.0) return k;
  }
}

double NoiseSampler::Sample(RngStream& rng) const {
  const double u = rng.NextUniform();
  if (const auto* laplace = std::get_if<TruncLaplaceParams>(&spec_.params)) {
    return TruncLaplaceQuantile(*laplace, u);
  }
  return static_cast<double>(InvertTable(u));
}

int64_t NoiseSampler::SampleInteger(RngStream& rng) const {
  if (cdf_.empty()) return static_cast<int64_t>(std::floor(Sample(rng)));
  return InvertTable(rng.NextUniform());
}

std::vector<double> NoiseSampler::SampleBatch(RngStream& rng,
                                              int64_t count) const {
  std::vector<double> draws;
  draws.reserve(static_cast<size_t>(std::max<int64_t>(count, 0)));
  for (int64_t i = 0; i < count; ++i) draws.push_back(Sample(rng));
  return draws;
}

absl::StatusOr<double> Sample(const MechanismSpec& spec, RngStream& rng) {
  absl::StatusOr<NoiseSampler> sampler = NoiseSampler::Create(spec);
  if (!sampler.ok()) return sampler.status();
  return sampler->Sample(rng);
}

absl::StatusOr<std::vector<double>> SampleBatch(const MechanismSpec& spec,
                                                RngStream& rng, int64_t count) {
  if (count < 0) return absl::InvalidArgumentError("count must be >= 0");
  absl::StatusOr<NoiseSampler> sampler = NoiseSampler::Create(spec);
  if (!sampler.ok()) return sampler.status();
  return sampler->SampleBatch(rng, count);
}

}  // namespace onesided
