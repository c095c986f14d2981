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


#include "seqmatch/seq_unknown.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "seqmatch/errors.hpp"

namespace seqmatch {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool positive(double x) { return x > 0.0; }  // false for NaN

}  // namespace

Thresholds::Thresholds(double lambda1, double lambda2, double lambda3)
    : lambda1_(lambda1), lambda2_(lambda2), lambda3_(lambda3) {
  if (!positive(lambda1) || !positive(lambda2) || !positive(lambda3)) {
    throw DomainError("thresholds must all be > 0");
  }
  if (lambda2 > std::min(lambda1, lambda3)) throw DomainError("thresholds need lambda2 <= min(lambda1, lambda3)");
}

Thresholds Thresholds::from_lambda3(double lambda3) { return Thresholds(lambda3, 0.1 * lambda3, lambda3); }

HypothesisScores::HypothesisScores(const HypothesisSpace& space, const DatabaseSnapshot& snapshot) {
  if (snapshot.dims() != space.dims()) throw DimensionError("snapshot dims differ from the hypothesis space");
  const PairScoreTable table(snapshot);
  for (std::size_t k = 1; k <= space.max_k(); ++k) {
    by_k_.push_back(table.score_all(space.of_k(k)));
    const auto& s = by_k_.back();
    std::size_t best = 0;
    for (std::size_t t = 1; t < s.size(); ++t) {
      if (s[t] < s[best]) best = t;
    }
    double second = kInf;
    for (std::size_t t = 0; t < s.size(); ++t) {
      if (t != best) second = std::min(second, s[t]);
    }
    argmin_.push_back(best);
    first_.push_back(s[best]);
    second_.push_back(second);
  }
}

double HypothesisScores::min_all() const { return *std::min_element(first_.begin(), first_.end()); }

double HypothesisScores::min_excluding(std::size_t k, std::size_t l) const {
  return l == argmin_.at(k - 1) ? second_[k - 1] : first_.at(k - 1);
}

bool event_A(const HypothesisScores& scores, const Thresholds& th) { return scores.min_all() > th.lambda1(); }

BComponents event_B_components(const HypothesisScores& scores, std::size_t h, std::size_t t, double b1_bound,
                               double b2_bound) {
  return {scores.at(h, t) <= b1_bound, scores.min_excluding(h, t) > b2_bound};
}

BComponents event_B_components(const HypothesisScores& scores, std::size_t h, std::size_t t, const Thresholds& th) {
  return event_B_components(scores, h, t, th.lambda2(), th.lambda3());
}

std::optional<HypothesisIndex> unique_B(const HypothesisSpace& space, const HypothesisScores& scores,
                                        double b1_bound, double b2_bound) {
  std::optional<HypothesisIndex> found;
  for (std::size_t k = 1; k <= space.max_k(); ++k) {
    const auto s = scores.of_k(k);
    for (std::size_t t = 0; t < s.size(); ++t) {
      if (s[t] > b1_bound) continue;
      if (!(scores.min_excluding(k, t) > b2_bound)) continue;
      if (found) return std::nullopt;
      found = HypothesisIndex::match(k, t);
    }
  }
  return found;
}

UnknownKVerdict run_sequential_unknown(const HypothesisSpace& space, GrowingDatabase& db, const Thresholds& th,
                                       std::uint64_t horizon, std::optional<std::uint64_t> max_steps) {
  if (horizon < 2) throw DomainError("run_sequential_unknown: horizon N must be >= 2");
  const std::uint64_t limit = max_steps.value_or(1'000'000 * horizon);
  const std::uint64_t start = horizon - 1;
  if (db.n() > start) throw DomainError("run_sequential_unknown: database already past n = N-1");
  db.advance_to(start);

  UnknownKVerdict v;
  v.thresholds = th;
  for (std::uint64_t steps = 0;; ++steps) {
    if (steps == limit) throw TruncatedRunError(db.n() - 1);
    const HypothesisScores scores(space, db.snapshot());
    if (event_A(scores, th)) {
      v.fired_event = FiredEvent::kRejectEvent;
    } else if (auto hit = unique_B(space, scores, th.lambda2(), th.lambda3())) {
      v.fired_event = FiredEvent::kUniqueMatch;
      v.decided = *hit;
    }
    if (v.fired_event != FiredEvent::kNone) {
      v.stopping_time = db.n();
      for (std::size_t k = 1; k <= space.max_k(); ++k) {
        const auto s = scores.of_k(k);
        v.scores.emplace_back(s.begin(), s.end());
      }
      return v;
    }
    db.advance();
  }
}

UnknownKVerdict run_fixed_length_unknown(const HypothesisSpace& space, const DatabaseSnapshot& snapshot,
                                         const Thresholds& th) {
  const HypothesisScores scores(space, snapshot);
  UnknownKVerdict v;
  v.thresholds = th;
  v.stopping_time = snapshot.n();
  if (auto hit = unique_B(space, scores, th.lambda2(), th.lambda3())) {
    v.fired_event = FiredEvent::kUniqueMatch;
    v.decided = *hit;
  }
  for (std::size_t k = 1; k <= space.max_k(); ++k) {
    const auto s = scores.of_k(k);
    v.scores.emplace_back(s.begin(), s.end());
  }
  return v;
}

const char* fired_event_name(FiredEvent e) {
  switch (e) {
    case FiredEvent::kRejectEvent:
      return "A";
    case FiredEvent::kUniqueMatch:
      return "B";
    case FiredEvent::kNone:
      break;
  }
  return "none";
}

nlohmann::json verdict_to_json(const UnknownKVerdict& v, bool include_scores) {
  nlohmann::json j;
  j["k"] = v.decided.k();
  if (v.decided.is_reject()) {
    j["l"] = "reject";
  } else {
    j["l"] = v.decided.l() + 1;
  }
  j["tau"] = v.stopping_time;
  j["fired_event"] = fired_event_name(v.fired_event);
  if (include_scores) j["scores"] = v.scores;
  j["thresholds"] = {{"lambda1", v.thresholds.lambda1()},
                     {"lambda2", v.thresholds.lambda2()},
                     {"lambda3", v.thresholds.lambda3()}};
  return j;
}

}  // namespace seqmatch
