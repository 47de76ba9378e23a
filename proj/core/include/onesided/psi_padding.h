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

#ifndef ONESIDED_PSI_PADDING_H_
#define ONESIDED_PSI_PADDING_H_

// Collision padding around a black-box PSI.
//
// Each party X draws z_x from its intersection-noise spec, samples z_x
// dummies from its own public pool A_X, and submits them together with the
// counterpart's entire pool A_Y. Every sampled dummy therefore collides, and
// the leaked intersection is I + z_x + z_y. Each party subtracts its own
// draw and sees I + z_other. Union padding adds non-colliding dummies from
// B pools so the leaked union becomes |D_X u D_Y| + |A_X| + |A_Y| + v_x + v_y.
//
// The PSI itself is an exact set intersection over identifier strings.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "onesided/mechanisms.h"
#include "onesided/rng.h"

namespace onesided {

using Identifier = std::string;

// Pool identifiers look like "pad:ax:0017". Real identifiers may not use
// this prefix.
inline constexpr std::string_view kReservedPrefix = "pad:";

enum class PartyRole { kX, kY };

enum class PsiMode {
  kIntersection,          // both parties see a DP intersection size
  kIntersectionAndUnion,  // ... and a DP union size
  kOneParty,              // only X observes; Y pads, X submits A_Y
};

enum class RecordTag { kReal, kIntersectPad, kUnionPad, kCounterpartPool };

// Public dummy pools, pairwise disjoint and outside the real universe.
// |a_x| is the support maximum of X's intersection spec (2n for the double
// geometric); b pools likewise follow the union specs and are empty when
// union padding is off.
struct Pools {
  std::vector<Identifier> a_x;
  std::vector<Identifier> a_y;
  std::vector<Identifier> b_x;
  std::vector<Identifier> b_y;

  int64_t n_intersect() const { return static_cast<int64_t>(a_x.size()); }
  int64_t n_union() const { return static_cast<int64_t>(b_x.size()); }
  const std::vector<Identifier>& a_pool(PartyRole role) const {
    return role == PartyRole::kX ? a_x : a_y;
  }
  const std::vector<Identifier>& b_pool(PartyRole role) const {
    return role == PartyRole::kX ? b_x : b_y;
  }
};

struct PartyInput {
  PartyRole role = PartyRole::kX;
  std::vector<Identifier> real_set;
  MechanismSpec intersect_noise_spec;
  std::optional<MechanismSpec> union_noise_spec;
};

struct PaddedInput {
  PartyRole role = PartyRole::kX;
  // Sorted, duplicate-free.
  std::vector<Identifier> submitted_set;
  int64_t z_own = 0;
  int64_t v_own = 0;
  std::map<Identifier, RecordTag> dummy_tags;
};

struct PsiTranscript {
  int64_t size_x = 0;
  int64_t size_y = 0;
  int64_t intersection_size = 0;
  int64_t union_size = 0;

  friend bool operator==(const PsiTranscript&, const PsiTranscript&) = default;
};

struct PartyView {
  int64_t dp_intersection = 0;
  std::optional<int64_t> dp_union;
  int64_t dp_counterpart_size = 0;

  friend bool operator==(const PartyView&, const PartyView&) = default;
};

// Same spec for both parties. Unbounded specs fail with FailedPrecondition:
// the pool must hold every value the noise can take.
absl::StatusOr<Pools> BuildPools(
    const MechanismSpec& intersect_spec,
    const std::optional<MechanismSpec>& union_spec = std::nullopt);

// Pools sized from each party's own specs.
absl::StatusOr<Pools> BuildPools(const PartyInput& x, const PartyInput& y);

// Real set is duplicate-free, outside the reserved namespace, and the party's
// specs fit the pools.
absl::Status ValidatePartyInput(const PartyInput& party, const Pools& pools,
                                PsiMode mode);

// Draws z_own (and v_own in union mode) from the party's specs, then pads.
absl::StatusOr<PaddedInput> PadInput(const PartyInput& party,
                                     const Pools& pools, RngStream& rng,
                                     PsiMode mode);

// As PadInput with the noise draws supplied; only the subset choice uses rng.
absl::StatusOr<PaddedInput> PadInputWithDraws(const PartyInput& party,
                                              const Pools& pools,
                                              RngStream& rng, int64_t z_own,
                                              int64_t v_own, PsiMode mode);

PsiTranscript RunBlackboxPsi(const PaddedInput& in_x, const PaddedInput& in_y);

// Strips the party's own noise (and the public pool sizes) from the
// transcript. DataLoss when the transcript is inconsistent with `own`.
absl::StatusOr<PartyView> ComputePartyView(const PsiTranscript& transcript,
                                           const PaddedInput& own,
                                           const Pools& pools, PsiMode mode);

struct OnePartyInputs {
  PaddedInput observer;  // X: D_X u A_Y
  PaddedInput holder;    // Y: D_Y u a_Y
};

absl::StatusOr<OnePartyInputs> OnePartyPad(const PartyInput& observer,
                                           const PartyInput& holder,
                                           const Pools& pools, RngStream& rng);

absl::StatusOr<OnePartyInputs> OnePartyPadWithDraw(const PartyInput& observer,
                                                   const PartyInput& holder,
                                                   const Pools& pools,
                                                   RngStream& rng,
                                                   int64_t z_holder);

// Pairs each submitted identifier with a value for downstream aggregation:
// dummies carry `null_value` (0 for sums, 1 for products), real records
// their entry in `real_values`. Missing real values are an error.
absl::StatusOr<std::vector<std::pair<Identifier, double>>> AttachNullValues(
    const PaddedInput& padded, double null_value,
    const std::map<Identifier, double>& real_values);

// One complete protocol run.
struct PsiRunRecord {
  int64_t z_x = 0;
  int64_t z_y = 0;
  int64_t v_x = 0;
  int64_t v_y = 0;
  PsiTranscript transcript;
  PartyView view_x;
  PartyView view_y;
};

// X pads with `rng_x`, Y with `rng_y`. In one-party mode view_y is left
// default-constructed since Y observes nothing.
absl::StatusOr<PsiRunRecord> SimulatePsi(const PartyInput& x,
                                         const PartyInput& y,
                                         const Pools& pools, PsiMode mode,
                                         RngStream& rng_x, RngStream& rng_y);

}  // namespace onesided

#endif  // ONESIDED_PSI_PADDING_H_
