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
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "seqmatch/distribution.hpp"
#include "seqmatch/matching.hpp"

namespace seqmatch {

/// Generating distributions of both databases plus the hypothesis they satisfy.
///
/// A matched model (truth = some k-matching) has P_i == Q_j exactly for the
/// pairs of the truth and P_i != Q_j for every other pair. A null model (no
/// truth) has every cross pair distinct. Within each database all
/// distributions are distinct. The constructor throws ModelError otherwise.
class SourceModel {
 public:
  SourceModel(ProblemDims dims, std::vector<Distribution> left, std::vector<Distribution> right,
              std::optional<MatchingSet> truth, Rates rates);

  const ProblemDims& dims() const { return dims_; }
  std::size_t alphabet_size() const { return left_.front().alphabet_size(); }
  std::span<const Distribution> left() const { return left_; }
  std::span<const Distribution> right() const { return right_; }
  const Rates& rates() const { return rates_; }

  bool is_null() const { return !truth_.has_value(); }
  /// Throws DomainError for a null model.
  const MatchingSet& truth() const;
  const std::optional<MatchingSet>& truth_or_null() const { return truth_; }
  /// Canonical index of the truth in `space`, or reject for a null model.
  HypothesisIndex truth_index(const HypothesisSpace& space) const;

  /// Same model with every distribution lacking full support mixed with eps uniform mass.
  /// Membership is preserved since the map is injective.
  SourceModel smoothed(double eps) const;
  bool has_full_support() const;

  friend bool operator==(const SourceModel&, const SourceModel&) = default;

 private:
  ProblemDims dims_;
  std::vector<Distribution> left_;
  std::vector<Distribution> right_;
  std::optional<MatchingSet> truth_;
  Rates rates_;
};

/// {"m1","m2","alpha","beta","left":[...],"right":[...],"truth":[[i,j],...] | "reject"}.
void to_json(nlohmann::json& j, const SourceModel& m);
/// Throws ConfigError on malformed input and on membership violations.
SourceModel model_from_json(const nlohmann::json& j);

}  // namespace seqmatch
