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


#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "seqmatch/matching.hpp"
#include "seqmatch/model.hpp"
#include "seqmatch/rng.hpp"
#include "seqmatch/scoring.hpp"
#include "seqmatch/seq_unknown.hpp"

namespace seqmatch {

enum class TestKind { kSeqKnown, kFlKnown, kFlZhou, kSeqUnknown, kFlUnknown };

const char* test_kind_name(TestKind kind);
/// Throws ConfigError for an unknown name.
TestKind test_kind_from_name(const std::string& name);
bool is_sequential(TestKind kind);
bool is_known_k(TestKind kind);

struct TestSpec {
  TestKind kind = TestKind::kSeqKnown;
  /// Zhou test threshold.
  double zhou_lambda = 0.0;
  /// Required by the unknown-k tests.
  std::optional<Thresholds> thresholds;
  /// Sequential safety valve; default 10^6 * N.
  std::optional<std::uint64_t> max_steps;

  friend bool operator==(const TestSpec&, const TestSpec&) = default;
};

/// The i.i.d. sample stream of one trial. Symbol (side, sequence, position) is a pure
/// function of (master_seed, trial_index, side, sequence, position), so every horizon
/// and every test run on the same trial sees the same realization.
class TrialStream : public SampleSource {
 public:
  TrialStream(const SourceModel& model, std::uint64_t master_seed, std::uint64_t trial_index);
  std::size_t draw(Side side, std::size_t sequence, std::uint64_t position) override;

 private:
  CounterStream rng_;
  std::vector<std::vector<double>> left_cdf_;
  std::vector<std::vector<double>> right_cdf_;
};

struct TrialSequences {
  std::vector<std::vector<std::size_t>> left;
  std::vector<std::vector<std::size_t>> right;
};

/// Raw symbols of one trial up to time max_n (lengths ceil(alpha max_n), ceil(beta max_n)).
TrialSequences generate_trial(const SourceModel& model, std::uint64_t master_seed, std::uint64_t trial_index,
                              std::uint64_t max_n);

enum class Outcome { kCorrect, kMismatch, kFalseReject, kFalseAlarm, kTruncated };

const char* outcome_name(Outcome o);

/// Under a matched truth: decided == truth is correct, reject is a false reject, anything
/// else a mismatch. Under the null: reject is correct, anything else a false alarm.
Outcome classify(const HypothesisIndex& truth, const HypothesisIndex& decided);

struct TrialRecord {
  std::uint64_t trial_index = 0;
  std::uint64_t horizon = 0;
  HypothesisIndex decided = HypothesisIndex::reject();
  std::uint64_t tau = 0;
  Outcome outcome = Outcome::kCorrect;
};

/// Runs one test on one trial. Truncation is caught and recorded as Outcome::kTruncated.
TrialRecord run_trial(const SourceModel& model, const HypothesisSpace& space, const TestSpec& test,
                      std::uint64_t horizon, std::uint64_t master_seed, std::uint64_t trial_index);

struct CampaignSpec {
  std::vector<std::uint64_t> horizons;
  std::uint64_t trials = 0;
  std::uint64_t master_seed = 0;
  unsigned parallelism = 1;

  friend bool operator==(const CampaignSpec&, const CampaignSpec&) = default;
};

struct RateEstimate {
  std::uint64_t count = 0;
  double rate = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  /// Zero observed events: the interval is one-sided [0, hi].
  bool one_sided = false;
};

/// 95% Wilson score interval; for count == 0 the one-sided 95% upper bound.
RateEstimate wilson_interval(std::uint64_t count, std::uint64_t trials);

struct ReportRow {
  std::uint64_t horizon = 0;
  std::uint64_t trials = 0;
  std::uint64_t correct = 0;
  std::uint64_t truncated = 0;
  RateEstimate mismatch;
  RateEstimate false_reject;
  RateEstimate false_alarm;
  /// Any of the three error kinds.
  RateEstimate error;
  double mean_tau = 0.0;
  double se_tau = 0.0;
  std::uint64_t max_tau = 0;
  /// Fraction of trials stopping at the earliest allowed time N-1 (sequential tests).
  double p_tau_start = 0.0;
  /// Mean stopping time above N + 3 standard errors.
  bool tau_flag = false;
};

struct SlopePoint {
  std::uint64_t horizon;
  /// -ln(max(rate, 1/(2 trials))) / N.
  double estimate;
  /// No error observed; the estimate uses the floor and is left out of the fit.
  bool censored;
};

struct SlopeSummary {
  std::vector<SlopePoint> points;
  /// Least-squares slope of -ln(rate) against N over uncensored points (needs two).
  std::optional<double> fitted_slope;
  /// Estimate at the largest N.
  std::optional<SlopePoint> largest_n;
  /// Uncensored estimates non-decreasing in N.
  bool monotone = true;
};

struct SimulationReport {
  std::string config_hash;
  TestSpec test;
  CampaignSpec campaign;
  std::vector<ReportRow> rows;
  SlopeSummary slope;
  nlohmann::json theory;
};

/// Runs trials x horizons test runs; trials are spread over `parallelism` threads and
/// reduced in trial-index order, so the report does not depend on the thread count.
SimulationReport run_campaign(const SourceModel& model, const TestSpec& test, const CampaignSpec& campaign,
                              const std::string& config_hash = "", bool attach_theory = true);

/// All per-trial records, horizon-major then trial order.
std::vector<TrialRecord> run_trials(const SourceModel& model, const TestSpec& test, const CampaignSpec& campaign);

/// Theoretical exponents matching the test kind, for the report.
nlohmann::json theory_for(const SourceModel& model, const TestSpec& test);

struct AuditRow {
  std::uint64_t horizon = 0;
  double mean_tau = 0.0;
  double se_tau = 0.0;
  std::uint64_t max_tau = 0;
  std::uint64_t median_tau = 0;
  std::uint64_t q90_tau = 0;
  double p_tau_start = 0.0;
  bool flagged = false;
};

/// Stopping-time statistics per horizon for a sequential test.
std::vector<AuditRow> stopping_time_audit(const SourceModel& model, const TestSpec& test,
                                          const CampaignSpec& campaign);

nlohmann::json report_to_json(const SimulationReport& report);
/// One row per (N, error type).
std::string report_to_csv(const SimulationReport& report);

}  // namespace seqmatch
