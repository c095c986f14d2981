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


#include "seqmatch/model.hpp"

#include <string>

#include <nlohmann/json.hpp>

#include "seqmatch/errors.hpp"

namespace seqmatch {
namespace {

std::string pair_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

void check_distinct(std::span<const Distribution> dists, const char* side) {
  for (std::size_t a = 0; a < dists.size(); ++a) {
    for (std::size_t b = a + 1; b < dists.size(); ++b) {
      if (dists[a] == dists[b]) {
        throw ModelError(std::string(side) + " distributions " + std::to_string(a + 1) + " and " +
                         std::to_string(b + 1) + " are identical");
      }
    }
  }
}

}  // namespace

SourceModel::SourceModel(ProblemDims dims, std::vector<Distribution> left, std::vector<Distribution> right,
                         std::optional<MatchingSet> truth, Rates rates)
    : dims_(dims), left_(std::move(left)), right_(std::move(right)), truth_(std::move(truth)), rates_(rates) {
  if (left_.size() != dims_.m1 || right_.size() != dims_.m2) {
    throw DimensionError("SourceModel: distribution counts do not match m1, m2");
  }
  const std::size_t x = left_.front().alphabet_size();
  for (const auto& d : left_) {
    if (d.alphabet_size() != x) throw DimensionError("SourceModel: mixed alphabet sizes");
  }
  for (const auto& d : right_) {
    if (d.alphabet_size() != x) throw DimensionError("SourceModel: mixed alphabet sizes");
  }
  if (truth_) truth_->check_fits(dims_);
  check_distinct(left_, "left");
  check_distinct(right_, "right");
  for (std::size_t i = 0; i < dims_.m1; ++i) {
    for (std::size_t j = 0; j < dims_.m2; ++j) {
      const bool matched = truth_ && truth_->contains({i, j});
      const bool equal = left_[i] == right_[j];
      if (matched && !equal) throw ModelError("SourceModel: matched pair " + pair_name(i, j) + " has P != Q");
      if (!matched && equal) throw ModelError("SourceModel: unmatched pair " + pair_name(i, j) + " has P == Q");
    }
  }
}

const MatchingSet& SourceModel::truth() const {
  if (!truth_) throw DomainError("SourceModel: null model has no matching");
  return *truth_;
}

HypothesisIndex SourceModel::truth_index(const HypothesisSpace& space) const {
  if (!truth_) return HypothesisIndex::reject();
  auto idx = space.find(*truth_);
  if (!idx) throw DimensionError("SourceModel: truth not in hypothesis space");
  return *idx;
}

bool SourceModel::has_full_support() const {
  for (const auto& d : left_) {
    if (!d.has_full_support()) return false;
  }
  for (const auto& d : right_) {
    if (!d.has_full_support()) return false;
  }
  return true;
}

SourceModel SourceModel::smoothed(double eps) const {
  std::vector<Distribution> l;
  std::vector<Distribution> r;
  for (const auto& d : left_) l.push_back(d.smoothed(eps));
  for (const auto& d : right_) r.push_back(d.smoothed(eps));
  return SourceModel(dims_, std::move(l), std::move(r), truth_, rates_);
}

void to_json(nlohmann::json& j, const SourceModel& m) {
  j = nlohmann::json::object();
  j["m1"] = m.dims().m1;
  j["m2"] = m.dims().m2;
  j["alpha"] = m.rates().alpha();
  j["beta"] = m.rates().beta();
  j["left"] = nlohmann::json::array();
  for (const auto& d : m.left()) j["left"].push_back(d);
  j["right"] = nlohmann::json::array();
  for (const auto& d : m.right()) j["right"].push_back(d);
  if (m.is_null()) {
    j["truth"] = "reject";
  } else {
    j["truth"] = m.truth();
  }
}

SourceModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("model must be an object");
  for (const char* key : {"m1", "m2", "alpha", "beta", "left", "right", "truth"}) {
    if (!j.contains(key)) throw ConfigError(std::string("model: missing field '") + key + "'");
  }
  try {
    if (!j["m1"].is_number_unsigned() || !j["m2"].is_number_unsigned()) {
      throw ConfigError("model: m1, m2 must be positive integers");
    }
    if (!j["alpha"].is_number() || !j["beta"].is_number()) throw ConfigError("model: alpha, beta must be numbers");
    if (!j["left"].is_array() || !j["right"].is_array()) throw ConfigError("model: left, right must be arrays");
    ProblemDims dims(j["m1"].get<std::size_t>(), j["m2"].get<std::size_t>());
    const HypothesisSpace space(dims);  // refuses oversize problems at parse time
    Rates rates(j["alpha"].get<double>(), j["beta"].get<double>());
    std::vector<Distribution> left;
    std::vector<Distribution> right;
    for (const auto& d : j["left"]) left.push_back(distribution_from_json(d));
    for (const auto& d : j["right"]) right.push_back(distribution_from_json(d));
    std::optional<MatchingSet> truth;
    if (j["truth"].is_string()) {
      if (j["truth"].get<std::string>() != "reject") throw ConfigError("model: truth must be pairs or \"reject\"");
    } else {
      truth = matching_from_json(j["truth"]);
    }
    return SourceModel(dims, std::move(left), std::move(right), std::move(truth), rates);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
}

}  // namespace seqmatch
