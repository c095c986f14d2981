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

/// Stopping thresholds of the unknown-k test. lambda1 bounds the reject event,
/// lambda2 the "this hypothesis fits" event, lambda3 the "competitors do not" event.
class Thresholds {
 public:
  /// Throws DomainError unless all are > 0 (infinity allowed) and lambda2 <= min(lambda1, lambda3).
  Thresholds(double lambda1, double lambda2, double lambda3);
  /// lambda1 = lambda3, lambda2 = 0.1 * lambda3.
  static Thresholds from_lambda3(double lambda3);

  double lambda1() const { return lambda1_; }
  double lambda2() const { return lambda2_; }
  double lambda3() const { return lambda3_; }

  friend bool operator==(const Thresholds&, const Thresholds&) = default;

 private:
  double lambda1_;
  double lambda2_;
  double lambda3_;
};

enum class FiredEvent { kNone, kRejectEvent, kUniqueMatch };

struct BComponents {
  bool b1;
  bool b2;
};

/// Scores of every hypothesis of a space at one snapshot, grouped by k.
class HypothesisScores {
 public:
  HypothesisScores(const HypothesisSpace& space, const DatabaseSnapshot& snapshot);

  /// Scores of the k-matchings, canonical order.
  std::span<const double> of_k(std::size_t k) const { return by_k_.at(k - 1); }
  double at(std::size_t k, std::size_t l) const { return by_k_.at(k - 1).at(l); }
  /// Smallest score over all hypotheses.
  double min_all() const;
  /// Min over the other k-matchings; +infinity when l is the only one.
  double min_excluding(std::size_t k, std::size_t l) const;

 private:
  std::vector<std::vector<double>> by_k_;
  // Per k: index of the smallest score and the two smallest values.
  std::vector<std::size_t> argmin_;
  std::vector<double> first_;
  std::vector<double> second_;
};

/// Every score exceeds lambda1.
bool event_A(const HypothesisScores& scores, const Thresholds& th);
/// b1: score(h,t) <= b1_bound; b2: min of the other h-scores > b2_bound.
BComponents event_B_components(const HypothesisScores& scores, std::size_t h, std::size_t t, double b1_bound,
                               double b2_bound);
BComponents event_B_components(const HypothesisScores& scores, std::size_t h, std::size_t t, const Thresholds& th);

/// The unique (h,t) with b1 && b2, if exactly one exists.
std::optional<HypothesisIndex> unique_B(const HypothesisSpace& space, const HypothesisScores& scores,
                                        double b1_bound, double b2_bound);

struct UnknownKVerdict {
  HypothesisIndex decided = HypothesisIndex::reject();
  std::uint64_t stopping_time = 0;
  FiredEvent fired_event = FiredEvent::kNone;
  /// Final scores, indexed [k-1][l].
  std::vector<std::vector<double>> scores;
  Thresholds thresholds{1.0, 1.0, 1.0};
};

/// Sequential unknown-k test: from n = N-1 on, stops at the first n where either
/// every score exceeds lambda1 (reject) or exactly one hypothesis has
/// score <= lambda2 with all same-k competitors > lambda3 (decide it).
UnknownKVerdict run_sequential_unknown(const HypothesisSpace& space, GrowingDatabase& db, const Thresholds& th,
                                       std::uint64_t horizon, std::optional<std::uint64_t> max_steps = std::nullopt);

/// One-step test at n = N: decides the unique hypothesis with score <= lambda2 and
/// competitors > lambda3, reject otherwise. lambda1 is unused.
UnknownKVerdict run_fixed_length_unknown(const HypothesisSpace& space, const DatabaseSnapshot& snapshot,
                                         const Thresholds& th);

const char* fired_event_name(FiredEvent e);
nlohmann::json verdict_to_json(const UnknownKVerdict& v, bool include_scores);

}  // namespace seqmatch
