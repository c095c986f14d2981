// Copyright 2026 The SeqMatch Authors
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


#include <set>

#include <gtest/gtest.h>

#include "seqmatch/rng.hpp"

namespace seqmatch {
namespace {

using C = Philox4x32::Counter;
using K = Philox4x32::Key;

// Published Philox4x32-10 known-answer vectors.
TEST(Philox, KnownAnswers) {
  EXPECT_EQ(Philox4x32::block(C{0, 0, 0, 0}, K{0, 0}), (C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(Philox4x32::block(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}),
            (C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(Philox4x32::block(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}),
            (C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, UsableAtCompileTime) {
  constexpr auto out = Philox4x32::block(C{0, 0, 0, 0}, K{0, 0});
  static_assert(out[0] == 0x6627e8d5);
}

TEST(UniformFromWords, Range) {
  EXPECT_EQ(uniform_from_words(0, 0), 0.0);
  EXPECT_LT(uniform_from_words(0xffffffff, 0xffffffff), 1.0);
  EXPECT_EQ(uniform_from_words(0x80000000, 0), 0.5);
}

TEST(CounterStream, RandomAccessIsDeterministic) {
  CounterStream a(42, 7);
  CounterStream b(42, 7);
  std::vector<double> forward;
  for (std::uint64_t p = 0; p < 64; ++p) forward.push_back(a.uniform(3, p));
  for (std::uint64_t p = 64; p-- > 0;) EXPECT_EQ(b.uniform(3, p), forward[p]);
  // Interleaving substreams does not disturb the values.
  for (std::uint64_t p = 0; p < 64; ++p) {
    (void)b.uniform(4, p);
    EXPECT_EQ(b.uniform(3, p), forward[p]);
  }
}

TEST(CounterStream, StreamsAndSeedsDiffer) {
  std::set<double> seen;
  for (std::uint64_t seed : {1, 2}) {
    for (std::uint64_t stream : {0ull, 1ull, 1ull << 40}) {
      CounterStream s(seed, stream);
      for (std::uint32_t sub : {0u, 1u}) seen.insert(s.uniform(sub, 0));
    }
  }
  EXPECT_EQ(seen.size(), 12u);
}

TEST(CounterStream, MomentsLookUniform) {
  CounterStream s(2024, 0);
  const int n = 200000;
  double sum = 0;
  double sq = 0;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform(0, static_cast<std::uint64_t>(i));
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sq += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 0.005);
  EXPECT_NEAR(sq / n, 1.0 / 3.0, 0.005);
}

}  // namespace
}  // namespace seqmatch
