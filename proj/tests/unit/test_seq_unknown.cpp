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


#include <limits>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "seqmatch/errors.hpp"
#include "seqmatch/seq_unknown.hpp"

namespace seqmatch {
namespace {

using testing::Seqs;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Decision {
  bool stop;
  HypothesisIndex decided;
};

// Events evaluated from raw sequences by exhaustive search.
Decision oracle_events(const HypothesisSpace& space, const Seqs& left, const Seqs& right, std::uint64_t n, double a,
                       double b, double l1, double l2, double l3, bool use_a) {
  std::vector<std::vector<double>> s;
  bool all_above = true;
  for (std::size_t k = 1; k <= space.max_k(); ++k) {
    auto& row = s.emplace_back();
    for (const auto& m : space.of_k(k)) {
      row.push_back(testing::oracle_score(m, left, right, n, 2, a, b));
      all_above = all_above && row.back() > l1;
    }
  }
  std::vector<HypothesisIndex> hits;
  for (std::size_t k = 1; k <= s.size(); ++k) {
    for (std::size_t l = 0; l < s[k - 1].size(); ++l) {
      double others = kInf;
      for (std::size_t o = 0; o < s[k - 1].size(); ++o) {
        if (o != l) others = std::min(others, s[k - 1][o]);
      }
      if (s[k - 1][l] <= l2 && others > l3) hits.push_back(HypothesisIndex::match(k, l));
    }
  }
  if (hits.size() == 1) return {true, hits[0]};
  return {use_a && all_above, HypothesisIndex::reject()};
}

TEST(Thresholds, Validation) {
  EXPECT_NO_THROW(Thresholds(0.5, 0.1, 0.3));
  EXPECT_NO_THROW(Thresholds(kInf, 0.1, kInf));
  EXPECT_THROW(Thresholds(0.5, 0.4, 0.3), DomainError);
  EXPECT_THROW(Thresholds(0.2, 0.3, 0.5), DomainError);
  EXPECT_THROW(Thresholds(0.0, 0.0, 0.1), DomainError);
  EXPECT_THROW(Thresholds(0.5, -0.1, 0.3), DomainError);
  EXPECT_THROW(Thresholds(NAN, 0.1, 0.3), DomainError);
  const auto d = Thresholds::from_lambda3(0.2);
  EXPECT_EQ(d.lambda1(), 0.2);
  EXPECT_NEAR(d.lambda2(), 0.02, 1e-17);
  EXPECT_EQ(d.lambda3(), 0.2);
}

TEST(HypothesisScores, MinsAndExclusions) {
  const ProblemDims dims(3, 2);
  const HypothesisSpace space(dims);
  const Seqs left = testing::bernoulli_seqs({0.2, 0.5, 0.8}, 40, 3);
  const Seqs right = testing::bernoulli_seqs({0.5, 0.2}, 40, 4);
  const auto snap = DatabaseSnapshot::from_sequences(dims, 2, Rates(1, 1), 40, left, right);
  const HypothesisScores scores(space, snap);
  double all = kInf;
  for (std::size_t k = 1; k <= 2; ++k) {
    const auto sets = space.of_k(k);
    for (std::size_t l = 0; l < sets.size(); ++l) {
      const double s = testing::oracle_score(sets[l], left, right, 40, 2, 1, 1);
      EXPECT_NEAR(scores.at(k, l), s, 1e-12);
      all = std::min(all, s);
      double others = kInf;
      for (std::size_t o = 0; o < sets.size(); ++o) {
        if (o != l) others = std::min(others, testing::oracle_score(sets[o], left, right, 40, 2, 1, 1));
      }
      EXPECT_NEAR(scores.min_excluding(k, l), others, 1e-12);
    }
  }
  EXPECT_NEAR(scores.min_all(), all, 1e-12);
}

TEST(HypothesisScores, SingleCompetitorSetIsInfinite) {
  const HypothesisSpace space(ProblemDims(1, 1));
  const auto snap = DatabaseSnapshot::from_sequences(ProblemDims(1, 1), 2, Rates(1, 1), 2, Seqs{{0, 1}}, Seqs{{1, 1}});
  const HypothesisScores scores(space, snap);
  EXPECT_EQ(scores.min_excluding(1, 0), kInf);
  const auto b = event_B_components(scores, 1, 0, 10.0, 10.0);
  EXPECT_TRUE(b.b1);
  EXPECT_TRUE(b.b2);
}

TEST(UnknownK, FixedLengthMatchesOracle) {
  const ProblemDims dims(3, 2);
  const HypothesisSpace space(dims);
  const Rates rates(1, 1);
  int decided = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Seqs left = testing::bernoulli_seqs({0.2, 0.5, 0.8}, 60, seed);
    const Seqs right = testing::bernoulli_seqs({0.5, 0.2}, 60, seed + 1000);
    const auto snap = DatabaseSnapshot::from_sequences(dims, 2, rates, 60, left, right);
    for (const auto& th : {Thresholds(0.3, 0.02, 0.1), Thresholds(0.05, 0.05, 0.05), Thresholds(1, 0.1, 0.3)}) {
      const auto v = run_fixed_length_unknown(space, snap, th);
      const auto o = oracle_events(space, left, right, 60, 1, 1, th.lambda1(), th.lambda2(), th.lambda3(), false);
      EXPECT_EQ(v.decided, o.decided);
      EXPECT_EQ(v.fired_event, o.stop ? FiredEvent::kUniqueMatch : FiredEvent::kNone);
      decided += !v.decided.is_reject();
    }
  }
  EXPECT_GT(decided, 0);
}

TEST(UnknownK, SequentialMatchesOracle) {
  const ProblemDims dims(3, 2);
  const HypothesisSpace space(dims);
  const Rates rates(1, 1);
  int rejects = 0;
  int matches = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const bool null_case = seed % 2 == 0;
    const std::vector<double> rp = null_case ? std::vector<double>{0.35, 0.65} : std::vector<double>{0.5, 0.2};
    const Seqs left = testing::bernoulli_seqs({0.2, 0.5, 0.8}, 3000, seed);
    const Seqs right = testing::bernoulli_seqs(rp, 3000, seed + 1000);
    const Thresholds th(0.02, 0.005, 0.01);
    const std::uint64_t horizon = 30;
    std::uint64_t tau = 0;
    Decision expect{false, HypothesisIndex::reject()};
    for (std::uint64_t n = horizon - 1; n <= 3000; ++n) {
      expect = oracle_events(space, left, right, n, 1, 1, th.lambda1(), th.lambda2(), th.lambda3(), true);
      if (expect.stop) {
        tau = n;
        break;
      }
    }
    ASSERT_GT(tau, 0u);
    RecordedSource src(left, right);
    GrowingDatabase db(dims, 2, rates, src);
    const auto v = run_sequential_unknown(space, db, th, horizon);
    EXPECT_EQ(v.stopping_time, tau);
    EXPECT_EQ(v.decided, expect.decided);
    EXPECT_EQ(v.fired_event, expect.decided.is_reject() ? FiredEvent::kRejectEvent : FiredEvent::kUniqueMatch);
    (v.decided.is_reject() ? rejects : matches) += 1;
  }
  EXPECT_GT(rejects, 0);
  EXPECT_GT(matches, 0);
}

TEST(UnknownK, TruncationAndStartChecks) {
  const ProblemDims dims(2, 1);
  const HypothesisSpace space(dims);
  const Seqs left = testing::bernoulli_seqs({0.2, 0.8}, 100, 1);
  const Seqs right = testing::bernoulli_seqs({0.5}, 100, 2);
  RecordedSource src(left, right);
  GrowingDatabase db(dims, 2, Rates(1, 1), src);
  // lambda1 = inf disables the reject event; lambda2 tiny keeps B from firing.
  const Thresholds th(kInf, 1e-12, kInf);
  EXPECT_THROW(run_sequential_unknown(space, db, th, 10, 3), TruncatedRunError);
  GrowingDatabase db2(dims, 2, Rates(1, 1), src);
  db2.advance_to(50);
  EXPECT_THROW(run_sequential_unknown(space, db2, th, 10), DomainError);
}

TEST(UnknownKVerdict, Json) {
  UnknownKVerdict v;
  v.fired_event = FiredEvent::kRejectEvent;
  v.stopping_time = 12;
  v.scores = {{0.1, 0.2}};
  const auto j = verdict_to_json(v, true);
  EXPECT_EQ(j["fired_event"], "A");
  EXPECT_EQ(j["l"], "reject");
  EXPECT_TRUE(j.contains("thresholds"));
  EXPECT_STREQ(fired_event_name(FiredEvent::kUniqueMatch), "B");
  EXPECT_STREQ(fired_event_name(FiredEvent::kNone), "none");
}

}  // namespace
}  // namespace seqmatch
