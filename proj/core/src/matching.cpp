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

#include "seqmatch/matching.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "seqmatch/errors.hpp"

namespace seqmatch {
namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("hypothesis count overflows 64 bits");
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) is divisible by i at every step; split by gcd to delay overflow.
    const std::uint64_t num = n - k + i;
    const std::uint64_t g = std::gcd(r, i);
    r = checked_mul(r / g, num / (i / g));
  }
  return r;
}

// DFS over left indices in increasing order, right indices in increasing
// order: emits matchings already sorted lexicographically.
void enumerate_rec(const ProblemDims& dims, std::size_t k, std::size_t next_left, std::vector<bool>& right_used,
                   std::vector<IndexPair>& current, std::vector<MatchingSet>& out) {
  if (current.size() == k) {
    out.emplace_back(current);
    return;
  }
  const std::size_t remaining = k - current.size();
  for (std::size_t i = next_left; i + remaining <= dims.m1; ++i) {
    for (std::size_t j = 0; j < dims.m2; ++j) {
      if (right_used[j]) continue;
      right_used[j] = true;
      current.emplace_back(i, j);
      enumerate_rec(dims, k, i + 1, right_used, current, out);
      current.pop_back();
      right_used[j] = false;
    }
  }
}

}  // namespace

ProblemDims::ProblemDims(std::size_t m1_, std::size_t m2_) : m1(m1_), m2(m2_) {
  if (m2 < 1 || m1 < m2) {
    throw DimensionError("ProblemDims: need m1 >= m2 >= 1, got m1=" + std::to_string(m1) +
                         " m2=" + std::to_string(m2));
  }
}

MatchingSet::MatchingSet(std::vector<IndexPair> pairs) : pairs_(std::move(pairs)) {
  if (pairs_.empty()) throw DomainError("MatchingSet: at least one pair required");
  std::sort(pairs_.begin(), pairs_.end());
  std::vector<std::size_t> left = matched_left();
  std::vector<std::size_t> right = matched_right();
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  if (std::adjacent_find(left.begin(), left.end()) != left.end() ||
      std::adjacent_find(right.begin(), right.end()) != right.end()) {
    throw DomainError("MatchingSet: an index appears in more than one pair");
  }
}

bool MatchingSet::contains(const IndexPair& pair) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), pair);
}

std::vector<std::size_t> MatchingSet::matched_left() const {
  std::vector<std::size_t> out;
  out.reserve(pairs_.size());
  for (const auto& [i, j] : pairs_) out.push_back(i);
  return out;
}

std::vector<std::size_t> MatchingSet::matched_right() const {
  std::vector<std::size_t> out;
  out.reserve(pairs_.size());
  for (const auto& [i, j] : pairs_) out.push_back(j);
  std::sort(out.begin(), out.end());
  return out;
}

void MatchingSet::check_fits(const ProblemDims& dims) const {
  if (pairs_.size() > dims.m2) throw DimensionError("MatchingSet: more pairs than right sequences");
  for (const auto& [i, j] : pairs_) {
    if (i >= dims.m1 || j >= dims.m2) throw DimensionError("MatchingSet: index outside the databases");
  }
}

std::uint64_t count_hypotheses(const ProblemDims& dims, std::size_t k) {
  if (k < 1 || k > dims.m2) throw DomainError("count_hypotheses: k must lie in [1, m2]");
  std::uint64_t r = checked_mul(binomial(dims.m1, k), binomial(dims.m2, k));
  for (std::uint64_t f = 2; f <= k; ++f) r = checked_mul(r, f);
  return r;
}

std::uint64_t count_all_hypotheses(const ProblemDims& dims) {
  std::uint64_t total = 0;
  for (std::size_t k = 1; k <= dims.m2; ++k) {
    if (__builtin_add_overflow(total, count_hypotheses(dims, k), &total)) {
      throw std::overflow_error("hypothesis count overflows 64 bits");
    }
  }
  return total;
}

std::vector<MatchingSet> enumerate_matchings(const ProblemDims& dims, std::size_t k) {
  const std::uint64_t expected = count_hypotheses(dims, k);
  if (expected > kMaxHypotheses) throw DimensionError("enumerate_matchings: too many hypotheses");
  std::vector<MatchingSet> out;
  out.reserve(expected);
  std::vector<bool> right_used(dims.m2, false);
  std::vector<IndexPair> current;
  enumerate_rec(dims, k, 0, right_used, current, out);
  return out;
}

std::vector<IndexedMatching> enumerate_all(const ProblemDims& dims) {
  if (count_all_hypotheses(dims) > kMaxHypotheses) throw DimensionError("enumerate_all: too many hypotheses");
  std::vector<IndexedMatching> out;
  for (std::size_t k = 1; k <= dims.m2; ++k) {
    auto sets = enumerate_matchings(dims, k);
    for (std::size_t l = 0; l < sets.size(); ++l) out.push_back({k, l, std::move(sets[l])});
  }
  return out;
}

std::vector<IndexPair> set_difference(const MatchingSet& a, const MatchingSet& b) {
  std::vector<IndexPair> out;
  for (const auto& p : a.pairs()) {
    if (!b.contains(p)) out.push_back(p);
  }
  return out;
}

bool is_submatching(const MatchingSet& a, const MatchingSet& b) {
  return std::includes(b.pairs().begin(), b.pairs().end(), a.pairs().begin(), a.pairs().end());
}

HypothesisSpace::HypothesisSpace(const ProblemDims& dims) : dims_(dims) {
  const std::uint64_t total = count_all_hypotheses(dims);
  if (total > kMaxHypotheses) {
    throw DimensionError("hypothesis space has " + std::to_string(total) + " elements, limit is " +
                         std::to_string(kMaxHypotheses));
  }
  flat_.reserve(total);
  for (std::size_t k = 1; k <= dims.m2; ++k) {
    offsets_.push_back(flat_.size());
    by_k_.push_back(enumerate_matchings(dims, k));
    const auto& sets = by_k_.back();
    for (std::size_t l = 0; l < sets.size(); ++l) flat_.push_back({k, l, sets[l]});
  }
}

std::span<const MatchingSet> HypothesisSpace::of_k(std::size_t k) const {
  if (k < 1 || k > dims_.m2) throw DomainError("HypothesisSpace: k out of range");
  return by_k_[k - 1];
}

const MatchingSet& HypothesisSpace::at(const HypothesisIndex& index) const {
  if (index.is_reject()) throw DomainError("HypothesisSpace: reject has no matching set");
  const auto sets = of_k(index.k());
  if (index.l() >= sets.size()) throw DomainError("HypothesisSpace: l out of range");
  return sets[index.l()];
}

std::optional<HypothesisIndex> HypothesisSpace::find(const MatchingSet& set) const {
  if (set.k() > dims_.m2) return std::nullopt;
  const auto sets = of_k(set.k());
  const auto it = std::lower_bound(sets.begin(), sets.end(), set);
  if (it == sets.end() || *it != set) return std::nullopt;
  return HypothesisIndex::match(set.k(), static_cast<std::size_t>(it - sets.begin()));
}

std::size_t HypothesisSpace::flat_index(const HypothesisIndex& index) const {
  (void)at(index);
  return offsets_[index.k() - 1] + index.l();
}

void to_json(nlohmann::json& j, const MatchingSet& m) {
  j = nlohmann::json::array();
  for (const auto& [i, jj] : m.pairs()) j.push_back({i + 1, jj + 1});
}

MatchingSet matching_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ConfigError("matching must be an array of [i, j] pairs");
  std::vector<IndexPair> pairs;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer()) {
      throw ConfigError("matching pairs must be [i, j] integer arrays");
    }
    const auto i = p[0].get<long long>();
    const auto jj = p[1].get<long long>();
    if (i < 1 || jj < 1) throw ConfigError("matching indices are 1-based");
    pairs.emplace_back(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(jj - 1));
  }
  try {
    return MatchingSet(std::move(pairs));
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace seqmatch
