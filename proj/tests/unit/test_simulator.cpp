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
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "seqmatch/errors.hpp"
#include "seqmatch/seq_known.hpp"
#include "seqmatch/simulator.hpp"

namespace seqmatch {
namespace {

SourceModel small_model(Rates rates = Rates(1, 1)) {
  return SourceModel(ProblemDims(3, 1), {Distribution::bernoulli(0.2), Distribution::bernoulli(0.5),
                                         Distribution::bernoulli(0.8)},
                     {Distribution::bernoulli(0.5)}, MatchingSet({{1, 0}}), rates);
}

TEST(GenerateTrial, DeterministicAndPrefixStable) {
  const auto m = small_model();
  const auto a = generate_trial(m, 7, 3, 50);
  const auto b = generate_trial(m, 7, 3, 50);
  const auto c = generate_trial(m, 7, 4, 50);
  const auto shorter = generate_trial(m, 7, 3, 20);
  EXPECT_EQ(a.left, b.left);
  EXPECT_EQ(a.right, b.right);
  EXPECT_NE(a.left, c.left);
  for (std::size_t i = 0; i < 3; ++i) {
    ASSERT_EQ(shorter.left[i].size(), 20u);
    EXPECT_TRUE(std::equal(shorter.left[i].begin(), shorter.left[i].end(), a.left[i].begin()));
  }
}

TEST(GenerateTrial, LengthsFollowRates) {
  const auto m = small_model(Rates(0.5, 1.5));
  for (std::uint64_t n : {1, 2, 3, 7, 10}) {
    const auto t = generate_trial(m, 1, 0, n);
    EXPECT_EQ(t.left[0].size(), (n + 1) / 2);
    EXPECT_EQ(t.right[0].size(), (3 * n + 1) / 2);
  }
  EXPECT_THROW(generate_trial(m, 1, 0, 0), DomainError);
}

TEST(GenerateTrial, SymbolFrequencies) {
  const auto m = small_model();
  const auto t = generate_trial(m, 99, 0, 100000);
  const double expect[] = {0.2, 0.5, 0.8};
  for (std::size_t i = 0; i < 3; ++i) {
    double ones = 0;
    for (auto x : t.left[i]) ones += static_cast<double>(x);
    EXPECT_NEAR(ones / 100000, expect[i], 0.006);
  }
}

TEST(Classify, AllOutcomes) {
  const auto truth = HypothesisIndex::match(1, 2);
  const auto null = HypothesisIndex::reject();
  EXPECT_EQ(classify(truth, truth), Outcome::kCorrect);
  EXPECT_EQ(classify(truth, HypothesisIndex::match(1, 0)), Outcome::kMismatch);
  EXPECT_EQ(classify(truth, HypothesisIndex::match(2, 2)), Outcome::kMismatch);
  EXPECT_EQ(classify(truth, null), Outcome::kFalseReject);
  EXPECT_EQ(classify(null, null), Outcome::kCorrect);
  EXPECT_EQ(classify(null, truth), Outcome::kFalseAlarm);
}

// Interval endpoints as roots of (phat - p)^2 = z^2 p (1 - p) / n.
std::pair<double, double> wilson_roots(double phat, double n, double z) {
  const double a = 1 + z * z / n;
  const double b = -(2 * phat + z * z / n);
  const double c = phat * phat;
  const double d = std::sqrt(b * b - 4 * a * c);
  return {(-b - d) / (2 * a), (-b + d) / (2 * a)};
}

TEST(Wilson, MatchesQuadraticRoots) {
  for (auto [k, n] : {std::pair{1, 10}, {5, 100}, {50, 100}, {99, 100}, {100, 100}, {3, 20000}}) {
    const auto r = wilson_interval(k, n);
    const auto [lo, hi] = wilson_roots(static_cast<double>(k) / n, n, 1.959963984540054);
    EXPECT_NEAR(r.lo, std::max(0.0, lo), 1e-12);
    EXPECT_NEAR(r.hi, std::min(1.0, hi), 1e-12);
    EXPECT_FALSE(r.one_sided);
  }
}

TEST(Wilson, ZeroCountIsOneSided) {
  const auto r = wilson_interval(0, 1000);
  EXPECT_TRUE(r.one_sided);
  EXPECT_EQ(r.lo, 0.0);
  // Upper root of the one-sided 95% equation at phat = 0.
  EXPECT_NEAR(r.hi, wilson_roots(0, 1000, 1.6448536269514722).second, 1e-15);
  EXPECT_THROW(wilson_interval(1, 0), DomainError);
  EXPECT_THROW(wilson_interval(5, 4), DomainError);
}

TEST(Wilson, CoverageOnRepeatedDraws) {
  std::mt19937_64 rng(12345);
  std::binomial_distribution<int> draw(200, 0.1);
  int covered = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const auto r = wilson_interval(static_cast<std::uint64_t>(draw(rng)), 200);
    covered += r.lo <= 0.1 && 0.1 <= r.hi;
  }
  EXPECT_GE(covered, 900);
}

TEST(RunTrial, MatchesManualRun) {
  const auto m = small_model();
  const HypothesisSpace space(m.dims());
  TestSpec spec;
  spec.kind = TestKind::kSeqKnown;
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    const auto rec = run_trial(m, space, spec, 30, 5, trial);
    TrialStream stream(m, 5, trial);
    GrowingDatabase db(m.dims(), 2, m.rates(), stream);
    const auto v = KnownKTest(space, 1, 2, m.rates()).run_sequential(db, 30);
    EXPECT_EQ(rec.tau, v.stopping_time);
    EXPECT_EQ(rec.decided, v.decided);
    EXPECT_EQ(rec.outcome, classify(m.truth_index(space), v.decided));
  }
}

TEST(RunTrial, TruncationIsRecorded) {
  const auto m = small_model();
  const HypothesisSpace space(m.dims());
  TestSpec spec;
  spec.kind = TestKind::kSeqUnknown;
  // Neither stopping event can fire.
  spec.thresholds = Thresholds(std::numeric_limits<double>::infinity(), 1e-12, std::numeric_limits<double>::infinity());
  spec.max_steps = 4;
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    const auto rec = run_trial(m, space, spec, 10, 1, trial);
    EXPECT_EQ(rec.outcome, Outcome::kTruncated);
    EXPECT_EQ(rec.tau, 12u);
  }
}

TEST(Campaign, ReportIndependentOfThreadCount) {
  const auto m = small_model();
  TestSpec spec;
  spec.kind = TestKind::kSeqKnown;
  CampaignSpec c{{10, 20}, 200, 77, 1};
  const auto one = report_to_json(run_campaign(m, spec, c, "abc"));
  c.parallelism = 8;
  const auto many = report_to_json(run_campaign(m, spec, c, "abc"));
  EXPECT_EQ(one.dump(), many.dump());
}

TEST(Campaign, RowsCountOutcomes) {
  const auto m = small_model();
  TestSpec spec;
  spec.kind = TestKind::kFlKnown;
  const CampaignSpec c{{5, 40}, 300, 3, 2};
  const auto report = run_campaign(m, spec, c);
  const auto records = run_trials(m, spec, c);
  ASSERT_EQ(report.rows.size(), 2u);
  ASSERT_EQ(records.size(), 600u);
  for (std::size_t h = 0; h < 2; ++h) {
    std::uint64_t correct = 0;
    std::uint64_t mismatch = 0;
    for (std::size_t t = 0; t < 300; ++t) {
      const auto& r = records[h * 300 + t];
      EXPECT_EQ(r.horizon, c.horizons[h]);
      EXPECT_EQ(r.trial_index, t);
      correct += r.outcome == Outcome::kCorrect;
      mismatch += r.outcome == Outcome::kMismatch;
    }
    EXPECT_EQ(report.rows[h].correct, correct);
    EXPECT_EQ(report.rows[h].mismatch.count, mismatch);
    EXPECT_EQ(report.rows[h].error.count, mismatch);
    EXPECT_EQ(report.rows[h].false_alarm.count, 0u);
  }
  // Errors get rarer with more samples.
  EXPECT_GT(report.rows[0].mismatch.rate, report.rows[1].mismatch.rate);
  const auto csv = report_to_csv(report);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 2 * 5);
}

TEST(Audit, StoppingTimesStartAtNMinusOne) {
  const auto m = small_model();
  TestSpec spec;
  spec.kind = TestKind::kSeqKnown;
  const CampaignSpec c{{10, 30}, 100, 9, 4};
  const auto rows = stopping_time_audit(m, spec, c);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    EXPECT_GE(r.mean_tau, static_cast<double>(r.horizon - 1));
    EXPECT_GE(r.max_tau, r.q90_tau);
    EXPECT_GE(r.q90_tau, r.median_tau);
    EXPECT_GE(r.median_tau, r.horizon - 1);
    EXPECT_GE(r.p_tau_start, 0.0);
    EXPECT_LE(r.p_tau_start, 1.0);
  }
}

TEST(TestKindNames, RoundTrip) {
  for (auto k : {TestKind::kSeqKnown, TestKind::kFlKnown, TestKind::kFlZhou, TestKind::kSeqUnknown,
                 TestKind::kFlUnknown}) {
    EXPECT_EQ(test_kind_from_name(test_kind_name(k)), k);
  }
  EXPECT_THROW(test_kind_from_name("nope"), ConfigError);
}

}  // namespace
}  // namespace seqmatch
