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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "testing/oracles.h"

namespace onesided {
namespace {

using ::onesided::testing::ChiSquareGof;

// Known-answer vectors for Philox4x32-10.
TEST(PhiloxTest, KnownAnswers) {
  EXPECT_EQ(Philox4x32({0, 0, 0, 0}, {0, 0}),
            (std::array<uint32_t, 4>{0x6627e8d5, 0xe169c58d, 0xbc57ac4c,
                                     0x9b00dbd8}));
  EXPECT_EQ(Philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                       {0xffffffff, 0xffffffff}),
            (std::array<uint32_t, 4>{0x408f276d, 0x41c83b0e, 0xa20bc7c6,
                                     0x6d5451fd}));
  EXPECT_EQ(Philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                       {0xa4093822, 0x299f31d0}),
            (std::array<uint32_t, 4>{0xd16cfe09, 0x94fdcceb, 0x5001e420,
                                     0x24126ea1}));
}

TEST(RngStreamTest, OutputLayoutIsPinned) {
  RngStream rng(0, 0);
  EXPECT_EQ(rng.NextU64(), 0xe169c58d6627e8d5ULL);
  EXPECT_EQ(rng.NextU64(), 0x9b00dbd8bc57ac4cULL);
  EXPECT_EQ(rng.position(), 2u);
  // Third draw comes from block 1.
  const auto block1 = Philox4x32({1, 0, 0, 0}, {0, 0});
  EXPECT_EQ(rng.NextU64(), (uint64_t{block1[1]} << 32) | block1[0]);
}

TEST(RngStreamTest, SeedAndStreamFeedKeyAndCounter) {
  RngStream rng(0x0000000200000001ULL, 0x0000000400000003ULL);
  const auto out = Philox4x32({0, 0, 3, 4}, {1, 2});
  EXPECT_EQ(rng.NextU64(), (uint64_t{out[1]} << 32) | out[0]);
  EXPECT_EQ(rng.seed(), 0x0000000200000001ULL);
  EXPECT_EQ(rng.stream_id(), 0x0000000400000003ULL);
}

TEST(RngStreamTest, Deterministic) {
  RngStream a(1, 7);
  RngStream b(1, 7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.NextU64(), b.NextU64());
}

TEST(RngStreamTest, DistinctStreamsDiffer) {
  std::set<uint64_t> seen;
  for (uint64_t stream = 0; stream < 64; ++stream) {
    RngStream rng(42, stream);
    for (int i = 0; i < 64; ++i) seen.insert(rng.NextU64());
  }
  EXPECT_EQ(seen.size(), 64u * 64u);
}

TEST(RngStreamTest, StreamsAreUncorrelated) {
  RngStream a(9, 0);
  RngStream b(9, 1);
  constexpr int kDraws = 200000;
  double sab = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    sab += (a.NextUniform() - 0.5) * (b.NextUniform() - 0.5);
  }
  // Each product has variance 1/144.
  EXPECT_LT(std::fabs(sab / kDraws), 5.0 / 12.0 / std::sqrt(kDraws));
}

TEST(RngStreamTest, UniformUsesTopFiftyThreeBits) {
  RngStream a(3, 3);
  RngStream b(3, 3);
  for (int i = 0; i < 100; ++i) {
    const double u = a.NextUniform();
    EXPECT_EQ(u, std::ldexp(static_cast<double>(b.NextU64() >> 11), -53));
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(RngStreamTest, NextBelowIsUniform) {
  RngStream rng(11, 0);
  constexpr int kBound = 37;
  constexpr int kDraws = 370000;
  std::vector<int64_t> counts(kBound, 0);
  for (int i = 0; i < kDraws; ++i) {
    const uint64_t x = rng.NextBelow(kBound);
    ASSERT_LT(x, static_cast<uint64_t>(kBound));
    ++counts[x];
  }
  const std::vector<double> probs(kBound, 1.0 / kBound);
  EXPECT_GT(ChiSquareGof(counts, probs, kDraws).p_value, 1e-4);
  EXPECT_EQ(rng.NextBelow(1), 0u);
}

TEST(RngStreamTest, NextBelowHugeBound) {
  RngStream rng(5, 5);
  const uint64_t bound = (uint64_t{1} << 63) + 12345;
  for (int i = 0; i < 1000; ++i) EXPECT_LT(rng.NextBelow(bound), bound);
}

TEST(RngStreamTest, Children) {
  const RngStream parent(17, 4);
  EXPECT_EQ(parent.Child(0).stream_id(), parent.Child(0).stream_id());
  EXPECT_EQ(parent.Child(3).seed(), 17u);
  std::set<uint64_t> ids;
  for (uint64_t i = 0; i < 100; ++i) ids.insert(parent.Child(i).stream_id());
  EXPECT_EQ(ids.size(), 100u);
  EXPECT_NE(RngStream(17, 5).Child(0).stream_id(), parent.Child(0).stream_id());
  RngStream c0 = parent.Child(0);
  RngStream c1 = parent.Child(1);
  EXPECT_NE(c0.NextU64(), c1.NextU64());
}

TEST(RngStreamTest, WorksAsStandardGenerator) {
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  std::vector<int> w = v;
  RngStream a(1, 1);
  RngStream b(1, 1);
  std::shuffle(v.begin(), v.end(), a);
  std::shuffle(w.begin(), w.end(), b);
  EXPECT_EQ(v, w);
  EXPECT_TRUE(std::is_permutation(v.begin(), v.end(), w.begin()));
}

}  // namespace
}  // namespace onesided
