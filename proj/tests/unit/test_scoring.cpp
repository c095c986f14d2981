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


#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "seqmatch/divergence.hpp"
#include "seqmatch/errors.hpp"
#include "seqmatch/scoring.hpp"

namespace seqmatch {
namespace {

using Seqs = std::vector<std::vector<std::size_t>>;

Seqs random_seqs(std::size_t count, std::size_t length, std::size_t alphabet, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> u(0, alphabet - 1);
  Seqs out(count, std::vector<std::size_t>(length));
  for (auto& s : out) {
    for (auto& x : s) x = u(rng);
  }
  return out;
}

// GJS of two count vectors straight from the definition.
double gjs_counts(const std::vector<double>& a, const std::vector<double>& b, double alpha, double beta) {
  double na = 0;
  double nb = 0;
  for (double x : a) na += x;
  for (double x : b) nb += x;
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double p = a[i] / na;
    const double q = b[i] / nb;
    const double r = (alpha * p + beta * q) / (alpha + beta);
    if (p > 0) s += alpha * p * std::log(p / r);
    if (q > 0) s += beta * q * std::log(q / r);
  }
  return s;
}

TEST(Snapshot, FromSequencesChecksLengths) {
  const ProblemDims dims(2, 1);
  const Rates r(1.0, 0.5);
  const auto left = random_seqs(2, 6, 3, 1);
  const auto right = random_seqs(1, 3, 3, 2);
  const auto s = DatabaseSnapshot::from_sequences(dims, 3, r, 6, left, right);
  EXPECT_EQ(s.left(0).length(), 6u);
  EXPECT_EQ(s.right(0).length(), 3u);
  EXPECT_THROW(DatabaseSnapshot::from_sequences(dims, 3, r, 5, left, right), DimensionError);
  EXPECT_THROW(DatabaseSnapshot::from_sequences(dims, 3, r, 6, random_seqs(1, 6, 3, 1), right), DimensionError);
}

TEST(GrowingDatabase, AppendsCeilingDifferences) {
  const ProblemDims dims(1, 1);
  const Rates r(0.5, 1.5);
  const auto left = random_seqs(1, 50, 2, 3);
  const auto right = random_seqs(1, 150, 2, 4);
  RecordedSource src(left, right);
  GrowingDatabase db(dims, 2, r, src);
  std::uint64_t prev_left = 0;
  for (std::uint64_t n = 1; n <= 100; ++n) {
    db.advance();
    const auto len = db.snapshot().left(0).length();
    EXPECT_EQ(len - prev_left, n % 2 == 1 ? 1u : 0u);
    EXPECT_EQ(len, (n + 1) / 2);
    EXPECT_EQ(db.snapshot().right(0).length(), static_cast<std::uint64_t>(std::ceil(1.5 * n - 1e-9)));
    prev_left = len;
  }
  // The grown snapshot equals one built from the same prefixes.
  const auto direct = DatabaseSnapshot::from_sequences(
      dims, 2, r, 100, Seqs{{left[0].begin(), left[0].begin() + 50}}, Seqs{{right[0].begin(), right[0].end()}});
  EXPECT_EQ(direct.left(0), db.snapshot().left(0));
  EXPECT_EQ(direct.right(0), db.snapshot().right(0));
}

TEST(RecordedSource, ThrowsPastTheEnd) {
  RecordedSource src(Seqs{{0, 1}}, Seqs{{1}});
  GrowingDatabase db(ProblemDims(1, 1), 2, Rates(1, 1), src);
  db.advance();
  EXPECT_THROW(db.advance_to(3), DimensionError);
}

TEST(PairScoreTable, MatchesDefinition) {
  const ProblemDims dims(3, 2);
  const Rates r(2.0, 0.5);
  const auto left = random_seqs(3, 40, 3, 5);
  const auto right = random_seqs(2, 10, 3, 6);
  const auto snap = DatabaseSnapshot::from_sequences(dims, 3, r, 20, left, right);
  const PairScoreTable table(snap);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      std::vector<double> a(3, 0.0);
      std::vector<double> b(3, 0.0);
      for (auto x : left[i]) a[x] += 1;
      for (auto x : right[j]) b[x] += 1;
      EXPECT_NEAR(table.at(i, j), gjs_counts(a, b, 2.0, 0.5), 1e-12);
    }
  }
  const MatchingSet m({{0, 1}, {2, 0}});
  EXPECT_NEAR(table.score(m), table.at(0, 1) + table.at(2, 0), 1e-15);
  EXPECT_NEAR(score(snap, m, r), table.score(m), 1e-12);
}

TEST(PairScoreTable, IdenticalTypesScoreExactlyZero) {
  const auto snap =
      DatabaseSnapshot::from_sequences(ProblemDims(1, 1), 2, Rates(1, 2), 3, Seqs{{0, 1, 1}}, Seqs{{1, 0, 1, 1, 0, 1}});
  EXPECT_EQ(PairScoreTable(snap).at(0, 0), 0.0);
  EXPECT_EQ(score(snap, MatchingSet({{0, 0}}), Rates(1, 2)), 0.0);
}

TEST(GCombined, SumsPairGjs) {
  const std::vector<Distribution> left = {Distribution::bernoulli(0.1), Distribution::bernoulli(0.6)};
  const std::vector<Distribution> right = {Distribution::bernoulli(0.3)};
  const Rates unit(1, 1);
  EXPECT_NEAR(g_combined(left, right, MatchingSet({{1, 0}}), unit), gjs(left[1], right[0], unit), 1e-15);
  EXPECT_THROW(g_combined(left, right, MatchingSet({{2, 0}}), unit), DimensionError);
}

TEST(Threshold, FormulaByHand) {
  const Rates r(2.0, 0.5);
  const double n = 40;
  const double expected = (3 * 4 * std::log(n * 2.0 + 2) + 2 * 4 * std::log(n * 0.5 + 2)) / n;
  EXPECT_NEAR(f_threshold(40, 2, 4, r), expected, 1e-14);
  EXPECT_NEAR(g_poly(40, 3, 2, 4, r), expected, 1e-14);
  EXPECT_THROW(g_poly(0, 1, 1, 2, r), DomainError);
  EXPECT_GT(f_threshold(10, 1, 2, r), f_threshold(1000, 1, 2, r));
}

}  // namespace
}  // namespace seqmatch
