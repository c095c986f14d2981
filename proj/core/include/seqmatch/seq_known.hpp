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
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "seqmatch/matching.hpp"
#include "seqmatch/scoring.hpp"

namespace seqmatch {

struct TraceStep {
  std::uint64_t n;
  double min_score;
  double threshold;
};

struct KnownKVerdict {
  HypothesisIndex decided = HypothesisIndex::reject();
  std::uint64_t stopping_time = 0;
  /// One score per k-matching, canonical order.
  std::vector<double> final_scores;
  /// f(tau) for the sequential test, f(N) for the minimal fixed-length test, lambda for the Zhou test.
  double threshold_at_stop = 0.0;
  /// Filled only when requested: one entry per n examined.
  std::vector<TraceStep> trace;
};

/// Index of the smallest value; ties go to the lowest index. Requires a non-empty input.
std::size_t argmin_lowest(std::span<const double> values);

/// Tests for a known number k of matched pairs.
class KnownKTest {
 public:
  /// Throws DomainError unless 1 <= k <= m2.
  KnownKTest(const HypothesisSpace& space, std::size_t k, std::size_t alphabet_size, const Rates& rates);

  std::size_t k() const { return k_; }
  std::span<const MatchingSet> hypotheses() const { return sets_; }

  std::vector<double> scores(const DatabaseSnapshot& snapshot) const;

  /// Sequential test: advances db to n = horizon-1, then stops at the first n with
  /// min score <= f(n) and decides the argmin. At most max_steps values of n are
  /// examined (default 10^6 * horizon); exceeding it throws TruncatedRunError.
  KnownKVerdict run_sequential(GrowingDatabase& db, std::uint64_t horizon,
                               std::optional<std::uint64_t> max_steps = std::nullopt, bool record_trace = false) const;

  /// Minimal-score test on the snapshot at n = N.
  KnownKVerdict run_fixed_length(const DatabaseSnapshot& snapshot) const;

  /// Argmin i*, second-smallest score h; decides i* if h > lambda, reject otherwise.
  /// Throws DomainError if there are fewer than two k-matchings.
  KnownKVerdict run_zhou(const DatabaseSnapshot& snapshot, double lambda) const;

 private:
  const HypothesisSpace* space_;
  std::size_t k_;
  std::size_t alphabet_size_;
  Rates rates_;
  std::span<const MatchingSet> sets_;
};

/// {"k", "l" (1-based) or "reject", "tau", "scores" (if include_scores), "threshold"}.
nlohmann::json verdict_to_json(const KnownKVerdict& v, bool include_scores);

}  // namespace seqmatch
