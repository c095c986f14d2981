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


#include "seqmatch/seq_known.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "seqmatch/errors.hpp"

namespace seqmatch {

std::size_t argmin_lowest(std::span<const double> values) {
  if (values.empty()) throw DomainError("argmin over an empty set");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  return best;
}

KnownKTest::KnownKTest(const HypothesisSpace& space, std::size_t k, std::size_t alphabet_size, const Rates& rates)
    : space_(&space), k_(k), alphabet_size_(alphabet_size), rates_(rates) {
  if (k < 1 || k > space.max_k()) throw DomainError("KnownKTest: k must lie in [1, m2]");
  sets_ = space.of_k(k);
}

std::vector<double> KnownKTest::scores(const DatabaseSnapshot& snapshot) const {
  if (snapshot.dims() != space_->dims()) throw DimensionError("KnownKTest: snapshot dims differ from the hypothesis space");
  return PairScoreTable(snapshot).score_all(sets_);
}

KnownKVerdict KnownKTest::run_sequential(GrowingDatabase& db, std::uint64_t horizon,
                                         std::optional<std::uint64_t> max_steps, bool record_trace) const {
  if (horizon < 2) throw DomainError("run_sequential: horizon N must be >= 2");
  const std::uint64_t limit = max_steps.value_or(1'000'000 * horizon);
  const std::uint64_t start = horizon - 1;
  if (db.n() > start) throw DomainError("run_sequential: database already past n = N-1");
  db.advance_to(start);

  KnownKVerdict v;
  for (std::uint64_t steps = 0;; ++steps) {
    if (steps == limit) throw TruncatedRunError(db.n() - 1);
    const std::uint64_t n = db.n();
    auto s = scores(db.snapshot());
    const std::size_t best = argmin_lowest(s);
    const double f = f_threshold(n, k_, alphabet_size_, rates_);
    if (record_trace) v.trace.push_back({n, s[best], f});
    if (s[best] <= f) {
      v.decided = HypothesisIndex::match(k_, best);
      v.stopping_time = n;
      v.final_scores = std::move(s);
      v.threshold_at_stop = f;
      return v;
    }
    db.advance();
  }
}

KnownKVerdict KnownKTest::run_fixed_length(const DatabaseSnapshot& snapshot) const {
  KnownKVerdict v;
  v.final_scores = scores(snapshot);
  v.decided = HypothesisIndex::match(k_, argmin_lowest(v.final_scores));
  v.stopping_time = snapshot.n();
  v.threshold_at_stop = snapshot.n() >= 1 ? f_threshold(snapshot.n(), k_, alphabet_size_, rates_) : 0.0;
  return v;
}

KnownKVerdict KnownKTest::run_zhou(const DatabaseSnapshot& snapshot, double lambda) const {
  if (sets_.size() < 2) throw DomainError("run_zhou: needs at least two k-matchings");
  if (std::isnan(lambda)) throw DomainError("run_zhou: lambda is NaN");
  KnownKVerdict v;
  v.final_scores = scores(snapshot);
  const std::size_t best = argmin_lowest(v.final_scores);
  double second = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < v.final_scores.size(); ++t) {
    if (t != best) second = std::min(second, v.final_scores[t]);
  }
  v.decided = second > lambda ? HypothesisIndex::match(k_, best) : HypothesisIndex::reject();
  v.stopping_time = snapshot.n();
  v.threshold_at_stop = lambda;
  return v;
}

nlohmann::json verdict_to_json(const KnownKVerdict& v, bool include_scores) {
  nlohmann::json j;
  j["k"] = v.decided.k();
  if (v.decided.is_reject()) {
    j["l"] = "reject";
  } else {
    j["l"] = v.decided.l() + 1;
  }
  j["tau"] = v.stopping_time;
  if (include_scores) j["scores"] = v.final_scores;
  j["threshold"] = v.threshold_at_stop;
  return j;
}

}  // namespace seqmatch
