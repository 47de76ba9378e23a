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

#include "onesided/psi_padding.h"

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_format.h"
#include "onesided/mechanisms.h"
#include "onesided/rng.h"
#include "onesided/sampler.h"

namespace onesided {
namespace {

PartyRole Other(PartyRole role) {
  return role == PartyRole::kX ? PartyRole::kY : PartyRole::kX;
}

absl::StatusOr<int64_t> PoolSize(const MechanismSpec& spec) {
  if (absl::Status status = ValidateSpec(spec); !status.ok()) return status;
  if (!spec.integer_valued()) {
    return absl::InvalidArgumentError(
        "pool padding needs an integer-valued noise mechanism");
  }
  if (!spec.bounded_support()) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "%s has unbounded support; dummy pools must be finite and hold "
        "every value the noise can take (use a bounded family such as the "
        "double geometric)",
        std::string(FamilyName(spec.family()))));
  }
  return static_cast<int64_t>(*MechanismMoments(spec).support_max);
}

std::vector<Identifier> MakePool(std::string_view tag, int64_t size) {
  std::vector<Identifier> pool;
  pool.reserve(static_cast<size_t>(size));
  for (int64_t i = 0; i < size; ++i) {
    pool.push_back(absl::StrFormat("%s%s:%04d", std::string(kReservedPrefix), std::string(tag), i));
  }
  return pool;
}

// Uniformly random `count`-subset of `pool` via a partial Fisher-Yates pass.
std::vector<Identifier> SampleSubset(const std::vector<Identifier>& pool,
                                     int64_t count, RngStream& rng) {
  std::vector<size_t> index(pool.size());
  std::iota(index.begin(), index.end(), size_t{0});
  std::vector<Identifier> chosen;
  chosen.reserve(static_cast<size_t>(count));
  for (size_t i = 0; i < static_cast<size_t>(count); ++i) {
    const size_t j = i + rng.NextBelow(index.size() - i);
    std::swap(index[i], index[j]);
    chosen.push_back(pool[index[i]]);
  }
  return chosen;
}

}  // namespace

absl::StatusOr<Pools> BuildPools(const MechanismSpec& intersect_spec,
                                 const std::optional<MechanismSpec>& union_spec) {
  absl::StatusOr<int64_t> a_size = PoolSize(intersect_spec);
  if (!a_size.ok()) return a_size.status();
  int64_t b_size = 0;
  if (union_spec.has_value()) {
    absl::StatusOr<int64_t> size = PoolSize(*union_spec);
    if (!size.ok()) return size.status();
    b_size = *size;
  }
  return Pools{.a_x = MakePool("ax", *a_size),
               .a_y = MakePool("ay", *a_size),
               .b_x = MakePool("bx", b_size),
               .b_y = MakePool("by", b_size)};
}

absl::StatusOr<Pools> BuildPools(const PartyInput& x, const PartyInput& y) {
  absl::StatusOr<int64_t> ax = PoolSize(x.intersect_noise_spec);
  if (!ax.ok()) return ax.status();
  absl::StatusOr<int64_t> ay = PoolSize(y.intersect_noise_spec);
  if (!ay.ok()) return ay.status();
  if (x.union_noise_spec.has_value() != y.union_noise_spec.has_value()) {
    return absl::InvalidArgumentError(
        "union padding needs a union spec from both parties or neither");
  }
  int64_t bx = 0;
  int64_t by = 0;
  if (x.union_noise_spec.has_value()) {
    absl::StatusOr<int64_t> sx = PoolSize(*x.union_noise_spec);
    if (!sx.ok()) return sx.status();
    absl::StatusOr<int64_t> sy = PoolSize(*y.union_noise_spec);
    if (!sy.ok()) return sy.status();
    bx = *sx;
    by = *sy;
  }
  return Pools{.a_x = MakePool("ax", *ax),
               .a_y = MakePool("ay", *ay),
               .b_x = MakePool("bx", bx),
               .b_y = MakePool("by", by)};
}

absl::Status ValidatePartyInput(const PartyInput& party, const Pools& pools,
                                PsiMode mode) {
  std::vector<Identifier> sorted = party.real_set;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return absl::InvalidArgumentError("real set contains duplicates");
  }
  for (const Identifier& id : sorted) {
    if (id.starts_with(kReservedPrefix)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "real identifier '%s' uses the reserved pool namespace", id));
    }
  }
  absl::StatusOr<int64_t> need = PoolSize(party.intersect_noise_spec);
  if (!need.ok()) return need.status();
  if (*need > static_cast<int64_t>(pools.a_pool(party.role).size())) {
    return absl::InvalidArgumentError(
        "intersection pool is smaller than the noise support");
  }
  if (mode == PsiMode::kIntersectionAndUnion) {
    if (!party.union_noise_spec.has_value()) {
      return absl::InvalidArgumentError("union mode needs a union spec");
    }
    absl::StatusOr<int64_t> need_b = PoolSize(*party.union_noise_spec);
    if (!need_b.ok()) return need_b.status();
    if (*need_b > static_cast<int64_t>(pools.b_pool(party.role).size())) {
      return absl::InvalidArgumentError(
          "union pool is smaller than the noise support");
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<PaddedInput> PadInputWithDraws(const PartyInput& party,
                                              const Pools& pools,
                                              RngStream& rng, int64_t z_own,
                                              int64_t v_own, PsiMode mode) {
  if (absl::Status status = ValidatePartyInput(party, pools, mode);
      !status.ok()) {
    return status;
  }
  const std::vector<Identifier>& own_a = pools.a_pool(party.role);
  const std::vector<Identifier>& own_b = pools.b_pool(party.role);
  const bool observer = mode == PsiMode::kOneParty && party.role == PartyRole::kX;
  if (z_own < 0 || z_own > static_cast<int64_t>(own_a.size()) ||
      (observer && z_own != 0)) {
    return absl::InternalError(absl::StrFormat(
        "intersection draw %d does not fit pool of size %d", z_own,
        own_a.size()));
  }
  const bool union_mode = mode == PsiMode::kIntersectionAndUnion;
  if (v_own < 0 || v_own > static_cast<int64_t>(own_b.size()) ||
      (!union_mode && v_own != 0)) {
    return absl::InternalError(absl::StrFormat(
        "union draw %d does not fit pool of size %d", v_own, own_b.size()));
  }

  PaddedInput out{.role = party.role, .z_own = z_own, .v_own = v_own};
  for (const Identifier& id : party.real_set) {
    out.dummy_tags.emplace(id, RecordTag::kReal);
  }
  for (Identifier& id : SampleSubset(own_a, z_own, rng)) {
    out.dummy_tags.emplace(std::move(id), RecordTag::kIntersectPad);
  }
  // The one-party holder never receives the observer's pool.
  if (mode != PsiMode::kOneParty || observer) {
    for (const Identifier& id : pools.a_pool(Other(party.role))) {
      out.dummy_tags.emplace(id, RecordTag::kCounterpartPool);
    }
  }
  if (union_mode) {
    for (Identifier& id : SampleSubset(own_b, v_own, rng)) {
      out.dummy_tags.emplace(std::move(id), RecordTag::kUnionPad);
    }
  }
  out.submitted_set.reserve(out.dummy_tags.size());
  for (const auto& [id, tag] : out.dummy_tags) out.submitted_set.push_back(id);
  return out;
}

absl::StatusOr<PaddedInput> PadInput(const PartyInput& party,
                                     const Pools& pools, RngStream& rng,
                                     PsiMode mode) {
  int64_t z = 0;
  int64_t v = 0;
  const bool observer = mode == PsiMode::kOneParty && party.role == PartyRole::kX;
  if (!observer) {
    absl::StatusOr<NoiseSampler> sampler =
        NoiseSampler::Create(party.intersect_noise_spec);
    if (!sampler.ok()) return sampler.status();
    z = sampler->SampleInteger(rng);
  }
  if (mode == PsiMode::kIntersectionAndUnion) {
    if (!party.union_noise_spec.has_value()) {
      return absl::InvalidArgumentError("union mode needs a union spec");
    }
    absl::StatusOr<NoiseSampler> sampler =
        NoiseSampler::Create(*party.union_noise_spec);
    if (!sampler.ok()) return sampler.status();
    v = sampler->SampleInteger(rng);
  }
  return PadInputWithDraws(party, pools, rng, z, v, mode);
}

PsiTranscript RunBlackboxPsi(const PaddedInput& in_x, const PaddedInput& in_y) {
  int64_t common = 0;
  auto x = in_x.submitted_set.begin();
  auto y = in_y.submitted_set.begin();
  while (x != in_x.submitted_set.end() && y != in_y.submitted_set.end()) {
    if (*x < *y) {
      ++x;
    } else if (*y < *x) {
      ++y;
    } else {
      ++common;
      ++x;
      ++y;
    }
  }
  const auto size_x = static_cast<int64_t>(in_x.submitted_set.size());
  const auto size_y = static_cast<int64_t>(in_y.submitted_set.size());
  return PsiTranscript{.size_x = size_x,
                       .size_y = size_y,
                       .intersection_size = common,
                       .union_size = size_x + size_y - common};
}

absl::StatusOr<PartyView> ComputePartyView(const PsiTranscript& transcript,
                                           const PaddedInput& own,
                                           const Pools& pools, PsiMode mode) {
  const bool is_x = own.role == PartyRole::kX;
  const int64_t own_size = is_x ? transcript.size_x : transcript.size_y;
  const int64_t other_size = is_x ? transcript.size_y : transcript.size_x;
  if (own_size != static_cast<int64_t>(own.submitted_set.size())) {
    return absl::DataLossError(
        "protocol violation: transcript does not match own submission");
  }
  if (transcript.union_size !=
      transcript.size_x + transcript.size_y - transcript.intersection_size) {
    return absl::DataLossError(
        "protocol violation: union size inconsistent with set sizes");
  }

  PartyView view;
  view.dp_intersection = transcript.intersection_size - own.z_own;
  // The counterpart submitted our whole A pool unless it is the one-party
  // holder, which submits only its own data and sample.
  const bool counterpart_has_own_pool =
      mode != PsiMode::kOneParty || own.role == PartyRole::kY;
  view.dp_counterpart_size =
      other_size -
      (counterpart_has_own_pool
           ? static_cast<int64_t>(pools.a_pool(own.role).size())
           : 0);
  if (mode == PsiMode::kIntersectionAndUnion) {
    view.dp_union = transcript.union_size -
                    static_cast<int64_t>(pools.a_x.size() + pools.a_y.size()) -
                    own.v_own;
  }
  if (view.dp_intersection < 0 || view.dp_counterpart_size < 0 ||
      (view.dp_union.has_value() && *view.dp_union < 0)) {
    return absl::DataLossError(
        "protocol violation: transcript implies negative cardinalities");
  }
  return view;
}

absl::StatusOr<OnePartyInputs> OnePartyPadWithDraw(const PartyInput& observer,
                                                   const PartyInput& holder,
                                                   const Pools& pools,
                                                   RngStream& rng,
                                                   int64_t z_holder) {
  if (observer.role != PartyRole::kX || holder.role != PartyRole::kY) {
    return absl::InvalidArgumentError(
        "one-party padding expects X as observer and Y as holder");
  }
  absl::StatusOr<PaddedInput> x =
      PadInputWithDraws(observer, pools, rng, 0, 0, PsiMode::kOneParty);
  if (!x.ok()) return x.status();
  absl::StatusOr<PaddedInput> y =
      PadInputWithDraws(holder, pools, rng, z_holder, 0, PsiMode::kOneParty);
  if (!y.ok()) return y.status();
  return OnePartyInputs{.observer = *std::move(x), .holder = *std::move(y)};
}

absl::StatusOr<OnePartyInputs> OnePartyPad(const PartyInput& observer,
                                           const PartyInput& holder,
                                           const Pools& pools, RngStream& rng) {
  if (observer.role != PartyRole::kX || holder.role != PartyRole::kY) {
    return absl::InvalidArgumentError(
        "one-party padding expects X as observer and Y as holder");
  }
  absl::StatusOr<PaddedInput> x =
      PadInput(observer, pools, rng, PsiMode::kOneParty);
  if (!x.ok()) return x.status();
  absl::StatusOr<PaddedInput> y = PadInput(holder, pools, rng, PsiMode::kOneParty);
  if (!y.ok()) return y.status();
  return OnePartyInputs{.observer = *std::move(x), .holder = *std::move(y)};
}

absl::StatusOr<std::vector<std::pair<Identifier, double>>> AttachNullValues(
    const PaddedInput& padded, double null_value,
    const std::map<Identifier, double>& real_values) {
  std::vector<std::pair<Identifier, double>> rows;
  rows.reserve(padded.submitted_set.size());
  for (const auto& [id, tag] : padded.dummy_tags) {
    if (tag != RecordTag::kReal) {
      rows.emplace_back(id, null_value);
      continue;
    }
    const auto it = real_values.find(id);
    if (it == real_values.end()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("no value supplied for real identifier '%s'", id));
    }
    rows.emplace_back(id, it->second);
  }
  return rows;
}

absl::StatusOr<PsiRunRecord> SimulatePsi(const PartyInput& x,
                                         const PartyInput& y,
                                         const Pools& pools, PsiMode mode,
                                         RngStream& rng_x, RngStream& rng_y) {
  PsiRunRecord record;
  if (mode == PsiMode::kOneParty) {
    absl::StatusOr<OnePartyInputs> inputs = OnePartyPad(x, y, pools, rng_y);
    if (!inputs.ok()) return inputs.status();
    record.z_y = inputs->holder.z_own;
    record.transcript = RunBlackboxPsi(inputs->observer, inputs->holder);
    absl::StatusOr<PartyView> view =
        ComputePartyView(record.transcript, inputs->observer, pools, mode);
    if (!view.ok()) return view.status();
    record.view_x = *view;
    return record;
  }
  absl::StatusOr<PaddedInput> in_x = PadInput(x, pools, rng_x, mode);
  if (!in_x.ok()) return in_x.status();
  absl::StatusOr<PaddedInput> in_y = PadInput(y, pools, rng_y, mode);
  if (!in_y.ok()) return in_y.status();
  record.z_x = in_x->z_own;
  record.z_y = in_y->z_own;
  record.v_x = in_x->v_own;
  record.v_y = in_y->v_own;
  record.transcript = RunBlackboxPsi(*in_x, *in_y);
  absl::StatusOr<PartyView> view_x =
      ComputePartyView(record.transcript, *in_x, pools, mode);
  if (!view_x.ok()) return view_x.status();
  absl::StatusOr<PartyView> view_y =
      ComputePartyView(record.transcript, *in_y, pools, mode);
  if (!view_y.ok()) return view_y.status();
  record.view_x = *view_x;
  record.view_y = *view_y;
  return record;
}

}  // namespace onesided
