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

#ifndef ONESIDED_HISTOGRAM_PADDING_H_
#define ONESIDED_HISTOGRAM_PADDING_H_

// DP padding of an event-count histogram leaked through an MPC side channel.
//
// For every bin i in {0, ..., K} draw j_i from a non-negative integer
// mechanism and add j_i dummy users whose i events all fail the predicate.
// Under add/remove neighbours one user changes one bin by one, so each bin
// needs a unit-sensitivity mechanism. Replacement neighbours move a user
// between two bins and need the budget split across both; the per-bin
// sensitivity option only checks that the mechanism was solved for it.

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "onesided/mechanisms.h"
#include "onesided/rng.h"

namespace onesided {

// counts[i] is the number of users with exactly i events; size k_max + 1.
struct EventHistogram {
  int64_t k_max = 0;
  std::vector<int64_t> counts;

  int64_t total_users() const;
};

absl::Status ValidateHistogram(const EventHistogram& hist);

struct PaddedHistogram {
  EventHistogram true_counts;
  std::vector<int64_t> dummy_counts;
  MechanismSpec spec;

  std::vector<int64_t> leaked() const;
};

struct HistogramPaddingOptions {
  int64_t bin_sensitivity = 1;
};

// Bin i draws from rng.Child(i).
absl::StatusOr<PaddedHistogram> PadHistogram(
    const EventHistogram& hist, const MechanismSpec& spec,
    const RngStream& rng, const HistogramPaddingOptions& options = {});

// Bin i draws from RngStream(seed, bin_streams[i]).
absl::StatusOr<PaddedHistogram> PadHistogramWithStreams(
    const EventHistogram& hist, const MechanismSpec& spec, uint64_t seed,
    std::span<const uint64_t> bin_streams,
    const HistogramPaddingOptions& options = {});

// Differencing attack: leak the histogram, remove one user from
// `victim_bin`, leak again with fresh noise, and guess the bin whose leaked
// count dropped the most (ties broken uniformly). Returns the fraction of
// `trials` in which the guess is `victim_bin`.
absl::StatusOr<double> DifferencingAttackDemo(const EventHistogram& hist,
                                              int64_t victim_bin,
                                              const MechanismSpec& spec,
                                              RngStream& rng, int64_t trials);

// The same attack with no padding at all.
absl::StatusOr<double> UnpaddedAttackSuccess(const EventHistogram& hist,
                                             int64_t victim_bin,
                                             RngStream& rng, int64_t trials);

struct CostReport {
  // Expected dummy events when every user is padded to k_max events,
  // assuming users spread uniformly over {0, ..., k_max}.
  double constant_time_events = 0.0;
  // n_mean * k_max (k_max + 1) / 2.
  double dp_padding_events = 0.0;
  // Users after padding: n_users + n_mean (k_max + 1).
  double shuffled_elements = 0.0;
  // c * m * log2(m)^2 for m shuffled elements.
  double shuffle_cost = 0.0;
  bool dp_cheaper = false;
};

inline constexpr double kDefaultShuffleConstant = 5.5;

absl::StatusOr<CostReport> CostCompare(
    int64_t n_users, int64_t k_max, const MechanismSpec& spec,
    double shuffle_constant = kDefaultShuffleConstant);

// CostCompare with the per-bin mean supplied directly.
absl::StatusOr<CostReport> CostCompareWithMean(
    int64_t n_users, int64_t k_max, double noise_mean,
    double shuffle_constant = kDefaultShuffleConstant);

}  // namespace onesided

#endif  // ONESIDED_HISTOGRAM_PADDING_H_
