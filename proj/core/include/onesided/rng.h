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

#ifndef ONESIDED_RNG_H_
#define ONESIDED_RNG_H_

#include <array>
#include <cstdint>

namespace onesided {

// Counter-based Philox4x32-10 stream.
//
// The 64-bit seed is the Philox key; the 128-bit counter is
// (block index, stream_id). Each block yields two 64-bit outputs, so a
// stream covers 2^65 draws before wrapping and distinct stream ids never
// share a block. Output depends only on (seed, stream_id, position), which
// makes test vectors portable across platforms and compilers.
//
// Not a cryptographic generator: production padding must draw from a CSPRNG.
// A stream is single-owner; use distinct stream ids for concurrent sampling.
class RngStream {
 public:
  using result_type = uint64_t;

  RngStream(uint64_t seed, uint64_t stream_id);

  uint64_t seed() const { return seed_; }
  uint64_t stream_id() const { return stream_id_; }
  // Number of 64-bit values consumed so far.
  uint64_t position() const { return position_; }

  uint64_t NextU64();
  // Uniform on [0, 1) with 53 random bits: (NextU64() >> 11) * 2^-53.
  double NextUniform();
  // Uniform integer in [0, bound), bound > 0; rejection sampling, no bias.
  uint64_t NextBelow(uint64_t bound);

  // A stream with the same seed and a stream id derived from (stream_id,
  // index). Derivation is a bijection in `index` for a fixed parent.
  RngStream Child(uint64_t index) const;

  // UniformRandomBitGenerator interface.
  static constexpr uint64_t min() { return 0; }
  static constexpr uint64_t max() { return ~uint64_t{0}; }
  uint64_t operator()() { return NextU64(); }

 private:
  void Refill();

  uint64_t seed_;
  uint64_t stream_id_;
  uint64_t block_ = 0;
  uint64_t position_ = 0;
  std::array<uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

// Philox4x32 with 10 rounds on a single block.
std::array<uint32_t, 4> Philox4x32(std::array<uint32_t, 4> counter,
                                   std::array<uint32_t, 2> key);

}  // namespace onesided

#endif  // ONESIDED_RNG_H_
