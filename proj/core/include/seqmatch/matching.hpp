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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

// Matching hypotheses between a left database of m1 sequences and a right
// database of m2 sequences. Indices are 0-based in memory and 1-based in every
// textual or JSON representation.

namespace seqmatch {

/// Hypothesis spaces larger than this are refused (every test step scores all of them).
inline constexpr std::uint64_t kMaxHypotheses = 1'000'000;

struct ProblemDims {
  std::size_t m1;
  std::size_t m2;

  /// Throws DimensionError unless m1 >= m2 >= 1.
  ProblemDims(std::size_t m1_, std::size_t m2_);

  friend bool operator==(const ProblemDims&, const ProblemDims&) = default;
};

/// (left index, right index), both 0-based.
using IndexPair = std::pair<std::size_t, std::size_t>;

/// A partial injective pairing of left and right indices, stored sorted.
class MatchingSet {
 public:
  /// Sorts the pairs; throws DomainError on an empty list or a repeated left/right index.
  explicit MatchingSet(std::vector<IndexPair> pairs);

  std::span<const IndexPair> pairs() const { return pairs_; }
  std::size_t k() const { return pairs_.size(); }

  bool contains(const IndexPair& pair) const;
  std::vector<std::size_t> matched_left() const;
  std::vector<std::size_t> matched_right() const;

  /// Throws DimensionError if some index falls outside dims.
  void check_fits(const ProblemDims& dims) const;

  friend bool operator==(const MatchingSet&, const MatchingSet&) = default;
  friend auto operator<=>(const MatchingSet&, const MatchingSet&) = default;

 private:
  std::vector<IndexPair> pairs_;
};

/// Names one hypothesis H_l^k (k matches, l-th in canonical order) or the reject/null hypothesis.
class HypothesisIndex {
 public:
  static HypothesisIndex reject() { return HypothesisIndex(); }
  static HypothesisIndex match(std::size_t k, std::size_t l) { return HypothesisIndex(k, l); }

  bool is_reject() const { return k_ == 0; }
  /// Match count; 0 for reject.
  std::size_t k() const { return k_; }
  /// 0-based position within the canonical order of k-matchings. Undefined for reject.
  std::size_t l() const { return l_; }

  friend bool operator==(const HypothesisIndex&, const HypothesisIndex&) = default;

 private:
  HypothesisIndex() = default;
  HypothesisIndex(std::size_t k, std::size_t l) : k_(k), l_(l) {}

  std::size_t k_ = 0;
  std::size_t l_ = 0;
};

/// C(m1,k) * C(m2,k) * k!, exact. Throws DomainError for k outside [1, m2] and
/// std::overflow_error if the value does not fit in 64 bits.
std::uint64_t count_hypotheses(const ProblemDims& dims, std::size_t k);

/// Sum over k = 1..m2 of count_hypotheses (overflow-checked).
std::uint64_t count_all_hypotheses(const ProblemDims& dims);

/// All k-matchings in canonical order: lexicographic on the sorted pair list.
std::vector<MatchingSet> enumerate_matchings(const ProblemDims& dims, std::size_t k);

struct IndexedMatching {
  std::size_t k;
  std::size_t l;
  MatchingSet set;
};

/// Concatenation of enumerate_matchings over k = 1..m2.
std::vector<IndexedMatching> enumerate_all(const ProblemDims& dims);

/// Pairs of a that are not in b, in a's order.
std::vector<IndexPair> set_difference(const MatchingSet& a, const MatchingSet& b);

/// Every pair of a is in b.
bool is_submatching(const MatchingSet& a, const MatchingSet& b);

/// Cached canonical enumeration with index lookup in both directions.
class HypothesisSpace {
 public:
  /// Throws DimensionError when the total hypothesis count exceeds kMaxHypotheses.
  explicit HypothesisSpace(const ProblemDims& dims);

  const ProblemDims& dims() const { return dims_; }
  std::size_t max_k() const { return dims_.m2; }
  std::size_t total() const { return flat_.size(); }

  /// All k-matchings, canonical order.
  std::span<const MatchingSet> of_k(std::size_t k) const;
  const MatchingSet& at(const HypothesisIndex& index) const;
  std::optional<HypothesisIndex> find(const MatchingSet& set) const;

  /// Position of (k,l) in the flat enumerate_all order.
  std::size_t flat_index(const HypothesisIndex& index) const;
  const IndexedMatching& flat(std::size_t i) const { return flat_[i]; }
  std::span<const IndexedMatching> all() const { return flat_; }

 private:
  ProblemDims dims_;
  std::vector<std::vector<MatchingSet>> by_k_;  // by_k_[k-1]
  std::vector<std::size_t> offsets_;            // flat offset of the first k-matching
  std::vector<IndexedMatching> flat_;
};

/// JSON array of [i, j] pairs, 1-based.
void to_json(nlohmann::json& j, const MatchingSet& m);
MatchingSet matching_from_json(const nlohmann::json& j);

}  // namespace seqmatch
