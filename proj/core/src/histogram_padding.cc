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

#include "onesided/histogram_padding.h"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_format.h"
#include "onesided/mechanisms.h"
#include "onesided/rng.h"
#include "onesided/sampler.h"

namespace onesided {
namespace {

absl::Status CheckPaddingSpec(const MechanismSpec& spec,
                              const HistogramPaddingOptions& options) {
  if (absl::Status status = ValidateSpec(spec); !status.ok()) return status;
  if (!spec.integer_valued()) {
    return absl::InvalidArgumentError(
        "histogram padding adds whole users; the mechanism must be integer-valued");
  }
  if (options.bin_sensitivity < 1) {
    return absl::InvalidArgumentError("bin sensitivity must be >= 1");
  }
  if (spec.budget.sensitivity < static_cast<double>(options.bin_sensitivity)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "spec solved for sensitivity %g but bins need %d",
        spec.budget.sensitivity, options.bin_sensitivity));
  }
  return absl::OkStatus();
}

// Index of the largest entry, ties broken uniformly with `rng`.
size_t ArgMaxRandomTie(const std::vector<int64_t>& values, RngStream& rng) {
  int64_t best = values[0];
  size_t ties = 0;
  size_t chosen = 0;
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] > best) {
      best = values[i];
      ties = 0;
    }
    if (values[i] == best) {
      ++ties;
      // Reservoir choice keeps each tied index with probability 1/ties.
      if (rng.NextBelow(ties) == 0) chosen = i;
    }
  }
  return chosen;
}

absl::Status CheckVictim(const EventHistogram& hist, int64_t victim_bin,
                         int64_t trials) {
  if (absl::Status status = ValidateHistogram(hist); !status.ok()) {
    return status;
  }
  if (victim_bin < 0 || victim_bin > hist.k_max) {
    return absl::InvalidArgumentError("victim bin outside [0, K]");
  }
  if (hist.counts[static_cast<size_t>(victim_bin)] < 1) {
    return absl::InvalidArgumentError("victim bin holds no users to remove");
  }
  if (trials < 1) return absl::InvalidArgumentError("trials must be >= 1");
  return absl::OkStatus();
}

}  // namespace

int64_t EventHistogram::total_users() const {
  return std::accumulate(counts.begin(), counts.end(), int64_t{0});
}

absl::Status ValidateHistogram(const EventHistogram& hist) {
  if (hist.k_max < 0) return absl::InvalidArgumentError("K must be >= 0");
  if (static_cast<int64_t>(hist.counts.size()) != hist.k_max + 1) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "histogram has %d bins, expected K + 1 = %d", hist.counts.size(),
        hist.k_max + 1));
  }
  for (int64_t c : hist.counts) {
    if (c < 0) return absl::InvalidArgumentError("bin counts must be >= 0");
  }
  return absl::OkStatus();
}

std::vector<int64_t> PaddedHistogram::leaked() const {
  std::vector<int64_t> out(true_counts.counts.size());
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = true_counts.counts[i] + dummy_counts[i];
  }
  return out;
}

absl::StatusOr<PaddedHistogram> PadHistogramWithStreams(
    const EventHistogram& hist, const MechanismSpec& spec, uint64_t seed,
    std::span<const uint64_t> bin_streams,
    const HistogramPaddingOptions& options) {
  if (absl::Status status = ValidateHistogram(hist); !status.ok()) {
    return status;
  }
  if (absl::Status status = CheckPaddingSpec(spec, options); !status.ok()) {
    return status;
  }
  if (bin_streams.size() != hist.counts.size()) {
    return absl::InvalidArgumentError("need exactly one stream id per bin");
  }
  absl::StatusOr<NoiseSampler> sampler = NoiseSampler::Create(spec);
  if (!sampler.ok()) return sampler.status();

  PaddedHistogram out{.true_counts = hist, .spec = spec};
  out.dummy_counts.reserve(hist.counts.size());
  for (uint64_t stream : bin_streams) {
    RngStream rng(seed, stream);
    out.dummy_counts.push_back(sampler->SampleInteger(rng));
  }
  return out;
}

absl::StatusOr<PaddedHistogram> PadHistogram(
    const EventHistogram& hist, const MechanismSpec& spec,
    const RngStream& rng, const HistogramPaddingOptions& options) {
  std::vector<uint64_t> streams;
  streams.reserve(hist.counts.size());
  for (size_t i = 0; i < hist.counts.size(); ++i) {
    streams.push_back(rng.Child(i).stream_id());
  }
  return PadHistogramWithStreams(hist, spec, rng.seed(), streams, options);
}

absl::StatusOr<double> DifferencingAttackDemo(const EventHistogram& hist,
                                              int64_t victim_bin,
                                              const MechanismSpec& spec,
                                              RngStream& rng, int64_t trials) {
  if (absl::Status status = CheckVictim(hist, victim_bin, trials);
      !status.ok()) {
    return status;
  }
  if (absl::Status status = CheckPaddingSpec(spec, {}); !status.ok()) {
    return status;
  }
  absl::StatusOr<NoiseSampler> sampler = NoiseSampler::Create(spec);
  if (!sampler.ok()) return sampler.status();

  const size_t bins = hist.counts.size();
  const auto victim = static_cast<size_t>(victim_bin);
  std::vector<int64_t> drop(bins);
  int64_t hits = 0;
  for (int64_t t = 0; t < trials; ++t) {
    for (size_t i = 0; i < bins; ++i) {
      const int64_t with = hist.counts[i] + sampler->SampleInteger(rng);
      const int64_t without = hist.counts[i] - (i == victim ? 1 : 0) +
                              sampler->SampleInteger(rng);
      drop[i] = with - without;
    }
    if (ArgMaxRandomTie(drop, rng) == victim) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

absl::StatusOr<double> UnpaddedAttackSuccess(const EventHistogram& hist,
                                             int64_t victim_bin,
                                             RngStream& rng, int64_t trials) {
  if (absl::Status status = CheckVictim(hist, victim_bin, trials);
      !status.ok()) {
    return status;
  }
  const auto victim = static_cast<size_t>(victim_bin);
  std::vector<int64_t> drop(hist.counts.size());
  int64_t hits = 0;
  for (int64_t t = 0; t < trials; ++t) {
    for (size_t i = 0; i < drop.size(); ++i) {
      drop[i] = hist.counts[i] - (hist.counts[i] - (i == victim ? 1 : 0));
    }
    if (ArgMaxRandomTie(drop, rng) == victim) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

absl::StatusOr<CostReport> CostCompareWithMean(int64_t n_users, int64_t k_max,
                                               double noise_mean,
                                               double shuffle_constant) {
  if (n_users < 1) return absl::InvalidArgumentError("n_users must be >= 1");
  if (k_max < 0) return absl::InvalidArgumentError("k_max must be >= 0");
  if (!(noise_mean >= 0) || !std::isfinite(noise_mean)) {
    return absl::InvalidArgumentError("noise mean must be >= 0");
  }
  if (!(shuffle_constant >= 4.0 && shuffle_constant <= 7.0)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "shuffle constant must lie in [4, 7], got %g", shuffle_constant));
  }
  const double n = static_cast<double>(n_users);
  const double k = static_cast<double>(k_max);
  CostReport report;
  report.constant_time_events = n * k / 2.0;
  report.dp_padding_events = noise_mean * k * (k + 1.0) / 2.0;
  report.shuffled_elements = n + noise_mean * (k + 1.0);
  const double log_m = std::log2(report.shuffled_elements);
  report.shuffle_cost =
      shuffle_constant * report.shuffled_elements * log_m * log_m;
  report.dp_cheaper = report.dp_padding_events < report.constant_time_events;
  return report;
}

absl::StatusOr<CostReport> CostCompare(int64_t n_users, int64_t k_max,
                                       const MechanismSpec& spec,
                                       double shuffle_constant) {
  if (absl::Status status = ValidateSpec(spec); !status.ok()) return status;
  return CostCompareWithMean(n_users, k_max, MechanismMoments(spec).mean,
                             shuffle_constant);
}

}  // namespace onesided
