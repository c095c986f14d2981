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


#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "seqmatch/errors.hpp"
#include "seqmatch/seq_known.hpp"

namespace seqmatch {
namespace {

using testing::Seqs;

TEST(ArgminLowest, TiesGoToLowestIndex) {
  EXPECT_EQ(argmin_lowest(std::vector<double>{3, 1, 1, 2}), 1u);
  EXPECT_EQ(argmin_lowest(std::vector<double>{0, 0}), 0u);
  EXPECT_THROW(argmin_lowest(std::vector<double>{}), DomainError);
}

TEST(KnownKTest, Validation) {
  const HypothesisSpace space(ProblemDims(3, 2));
  EXPECT_THROW(KnownKTest(space, 0, 2, Rates(1, 1)), DomainError);
  EXPECT_THROW(KnownKTest(space, 3, 2, Rates(1, 1)), DomainError);
  const KnownKTest t(space, 2, 2, Rates(1, 1));
  EXPECT_EQ(t.hypotheses().size(), 6u);
}

struct SequentialCase {
  std::size_t m1, m2, k;
  double alpha, beta;
  std::uint64_t horizon;
  std::uint64_t seed;
};

class SequentialOracle : public ::testing::TestWithParam<SequentialCase> {};

TEST_P(SequentialOracle, MatchesDirectScan) {
  const auto c = GetParam();
  const ProblemDims dims(c.m1, c.m2);
  const HypothesisSpace space(dims);
  const Rates rates(c.alpha, c.beta);
  std::vector<double> lp;
  std::vector<double> rp;
  for (std::size_t i = 0; i < c.m1; ++i) lp.push_back(0.1 + 0.8 * static_cast<double>(i) / static_cast<double>(c.m1));
  for (std::size_t j = 0; j < c.m2; ++j) rp.push_back(lp[(j + 1) % c.m1]);
  const std::size_t len = 4000;
  const Seqs left = testing::bernoulli_seqs(lp, len, c.seed);
  const Seqs right = testing::bernoulli_seqs(rp, len, c.seed + 1);

  // Oracle: first n >= N-1 with min score <= f(n).
  const auto sets = space.of_k(c.k);
  std::uint64_t tau = 0;
  std::size_t best = 0;
  for (std::uint64_t n = c.horizon - 1; testing::ceil_len(std::max(c.alpha, c.beta), n) <= len; ++n) {
    double lo = INFINITY;
    for (std::size_t l = 0; l < sets.size(); ++l) {
      const double s = testing::oracle_score(sets[l], left, right, n, 2, c.alpha, c.beta);
      if (s < lo) {
        lo = s;
        best = l;
      }
    }
    if (lo <= testing::oracle_threshold(n, c.k, 2, c.alpha, c.beta)) {
      tau = n;
      break;
    }
  }
  ASSERT_GT(tau, 0u) << "recorded data too short for this case";

  RecordedSource src(left, right);
  GrowingDatabase db(dims, 2, rates, src);
  const KnownKTest test(space, c.k, 2, rates);
  const auto v = test.run_sequential(db, c.horizon, std::nullopt, true);
  EXPECT_EQ(v.stopping_time, tau);
  EXPECT_EQ(v.decided, HypothesisIndex::match(c.k, best));
  EXPECT_EQ(v.trace.size(), tau - c.horizon + 2);
  EXPECT_EQ(v.trace.back().n, tau);
  EXPECT_LE(v.trace.back().min_score, v.trace.back().threshold);
  EXPECT_NEAR(v.threshold_at_stop, testing::oracle_threshold(tau, c.k, 2, c.alpha, c.beta), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Cases, SequentialOracle,
                         ::testing::Values(SequentialCase{2, 1, 1, 1.0, 1.0, 20, 11},
                                           SequentialCase{3, 2, 1, 1.0, 1.0, 60, 12},
                                           SequentialCase{3, 2, 2, 0.5, 1.5, 150, 13},
                                           SequentialCase{4, 2, 2, 2.0, 0.5, 200, 14}));

TEST(KnownKTest, IdenticalMatchedSequencesStopAtFirstLook) {
  const Seqs left = {{0, 1, 1, 0, 1, 0, 0, 1, 1, 1}, {1, 1, 1, 1, 1, 1, 1, 1, 1, 0}};
  const Seqs right = {left[0]};
  RecordedSource src(left, right);
  const HypothesisSpace space(ProblemDims(2, 1));
  GrowingDatabase db(ProblemDims(2, 1), 2, Rates(1, 1), src);
  const auto v = KnownKTest(space, 1, 2, Rates(1, 1)).run_sequential(db, 8);
  EXPECT_EQ(v.stopping_time, 7u);
  EXPECT_EQ(v.decided, HypothesisIndex::match(1, 0));
  EXPECT_EQ(v.final_scores[0], 0.0);
}

Seqs periodic(std::size_t period, std::size_t one_at, std::size_t len, bool invert) {
  std::vector<std::size_t> s(len);
  for (std::size_t n = 0; n < len; ++n) s[n] = ((n % period == one_at) != invert) ? 1 : 0;
  return {s};
}

TEST(KnownKTest, TruncationReportsLastN) {
  // Scores stay near GJS(0.1, 0.5) ~ 0.2, far above f(n) ~ 0.02 for n around 2000.
  Seqs left = periodic(10, 0, 3000, false);
  left.push_back(periodic(10, 0, 3000, true)[0]);
  const Seqs right = periodic(2, 0, 3000, false);
  RecordedSource src(left, right);
  const HypothesisSpace space(ProblemDims(2, 1));
  GrowingDatabase db(ProblemDims(2, 1), 2, Rates(1, 1), src);
  const KnownKTest test(space, 1, 2, Rates(1, 1));
  try {
    test.run_sequential(db, 2000, 5);
    FAIL() << "expected truncation";
  } catch (const TruncatedRunError& e) {
    EXPECT_EQ(e.last_n(), 2003u);
  }
}

TEST(KnownKTest, RefusesDatabasePastStart) {
  const Seqs left = testing::bernoulli_seqs({0.2, 0.8}, 50, 1);
  const Seqs right = testing::bernoulli_seqs({0.2}, 50, 2);
  RecordedSource src(left, right);
  const HypothesisSpace space(ProblemDims(2, 1));
  GrowingDatabase db(ProblemDims(2, 1), 2, Rates(1, 1), src);
  db.advance_to(30);
  EXPECT_THROW(KnownKTest(space, 1, 2, Rates(1, 1)).run_sequential(db, 20), DomainError);
}

TEST(KnownKTest, FixedLengthAndZhouAgreeWithOracle) {
  const ProblemDims dims(3, 2);
  const HypothesisSpace space(dims);
  const Rates rates(1, 1);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Seqs left = testing::bernoulli_seqs({0.2, 0.5, 0.7}, 30, seed);
    const Seqs right = testing::bernoulli_seqs({0.5, 0.2}, 30, seed + 100);
    const auto snap = DatabaseSnapshot::from_sequences(dims, 2, rates, 30, left, right);
    const KnownKTest test(space, 2, 2, rates);
    std::vector<double> s;
    for (const auto& m : test.hypotheses()) s.push_back(testing::oracle_score(m, left, right, 30, 2, 1, 1));
    const auto scores = test.scores(snap);
    for (std::size_t l = 0; l < s.size(); ++l) EXPECT_NEAR(scores[l], s[l], 1e-12);

    const auto fl = test.run_fixed_length(snap);
    std::vector<double> sorted = scores;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t arg = std::min_element(scores.begin(), scores.end()) - scores.begin();
    EXPECT_EQ(fl.decided, HypothesisIndex::match(2, arg));
    EXPECT_EQ(fl.stopping_time, 30u);

    for (double lambda : {0.0, 0.01, 0.05, 0.2}) {
      const auto z = test.run_zhou(snap, lambda);
      if (sorted[1] > lambda) {
        EXPECT_EQ(z.decided, fl.decided);
      } else {
        EXPECT_TRUE(z.decided.is_reject());
      }
    }
  }
}

TEST(KnownKTest, ZhouNeedsTwoHypotheses) {
  const HypothesisSpace space(ProblemDims(1, 1));
  const auto snap = DatabaseSnapshot::from_sequences(ProblemDims(1, 1), 2, Rates(1, 1), 2, Seqs{{0, 1}}, Seqs{{1, 1}});
  EXPECT_THROW(KnownKTest(space, 1, 2, Rates(1, 1)).run_zhou(snap, 0.1), DomainError);
}

TEST(KnownKVerdict, JsonIsOneBased) {
  KnownKVerdict v;
  v.decided = HypothesisIndex::match(2, 4);
  v.stopping_time = 19;
  v.final_scores = {0.5, 0.25};
  const auto j = verdict_to_json(v, true);
  EXPECT_EQ(j["k"], 2);
  EXPECT_EQ(j["l"], 5);
  EXPECT_EQ(j["tau"], 19);
  EXPECT_EQ(j["scores"].size(), 2u);
  EXPECT_FALSE(verdict_to_json(v, false).contains("scores"));
  KnownKVerdict r;
  EXPECT_EQ(verdict_to_json(r, false)["l"], "reject");
}

}  // namespace
}  // namespace seqmatch
