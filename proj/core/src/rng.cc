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

#include "onesided/rng.h"

#include <array>
#include <cstdint>

namespace onesided {
namespace {

constexpr uint32_t kMul0 = 0xD2511F53;
constexpr uint32_t kMul1 = 0xCD9E8D57;
constexpr uint32_t kWeyl0 = 0x9E3779B9;
constexpr uint32_t kWeyl1 = 0xBB67AE85;

inline void MulHiLo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
  const uint64_t product = static_cast<uint64_t>(a) * b;
  hi = static_cast<uint32_t>(product >> 32);
  lo = static_cast<uint32_t>(product);
}

uint64_t SplitMix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::array<uint32_t, 4> Philox4x32(std::array<uint32_t, 4> ctr,
                                   std::array<uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    uint32_t hi0, lo0, hi1, lo1;
    MulHiLo(kMul0, ctr[0], hi0, lo0);
    MulHiLo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

RngStream::RngStream(uint64_t seed, uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {}

void RngStream::Refill() {
  const std::array<uint32_t, 4> out = Philox4x32(
      {static_cast<uint32_t>(block_), static_cast<uint32_t>(block_ >> 32),
       static_cast<uint32_t>(stream_id_),
       static_cast<uint32_t>(stream_id_ >> 32)},
      {static_cast<uint32_t>(seed_), static_cast<uint32_t>(seed_ >> 32)});
  ++block_;
  // Consumed back to front.
  buffer_[1] = (static_cast<uint64_t>(out[1]) << 32) | out[0];
  buffer_[0] = (static_cast<uint64_t>(out[3]) << 32) | out[2];
  buffered_ = 2;
}

uint64_t RngStream::NextU64() {
  if (buffered_ == 0) Refill();
  ++position_;
  return buffer_[--buffered_];
}

double RngStream::NextUniform() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

uint64_t RngStream::NextBelow(uint64_t bound) {
  const uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const uint64_t x = NextU64();
    if (x >= threshold) return x % bound;
  }
}

RngStream RngStream::Child(uint64_t index) const {
  return RngStream(seed_, SplitMix64(stream_id_ ^ 0x5851F42D4C957F2DULL) + index);
}

}  // namespace onesided
