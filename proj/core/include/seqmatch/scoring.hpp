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
#include <span>
#include <vector>

#include "seqmatch/distribution.hpp"
#include "seqmatch/matching.hpp"

namespace seqmatch {

enum class Side { kLeft, kRight };

/// Empirical types of both databases at a nominal time n. Left types have
/// length ceil(alpha*n), right types ceil(beta*n), all on one alphabet.
class DatabaseSnapshot {
 public:
  /// Empty databases at n = 0.
  DatabaseSnapshot(const ProblemDims& dims, std::size_t alphabet_size, const Rates& rates);

  /// Builds the snapshot at time n from explicit symbol sequences; lengths must match xi(n), chi(n).
  static DatabaseSnapshot from_sequences(const ProblemDims& dims, std::size_t alphabet_size, const Rates& rates,
                                         std::uint64_t n,
                                         const std::vector<std::vector<std::size_t>>& left_sequences,
                                         const std::vector<std::vector<std::size_t>>& right_sequences);

  const ProblemDims& dims() const { return dims_; }
  std::size_t alphabet_size() const { return alphabet_size_; }
  const Rates& rates() const { return rates_; }
  std::uint64_t n() const { return n_; }

  const EmpiricalType& left(std::size_t i) const { return left_.at(i); }
  const EmpiricalType& right(std::size_t j) const { return right_.at(j); }

 private:
  friend class GrowingDatabase;

  ProblemDims dims_;
  std::size_t alphabet_size_;
  Rates rates_;
  std::uint64_t n_ = 0;
  std::vector<EmpiricalType> left_;
  std::vector<EmpiricalType> right_;
};

/// Produces the symbol at a given position of a given sequence. Implementations
/// must be deterministic in (side, sequence, position).
class SampleSource {
 public:
  virtual ~SampleSource() = default;
  virtual std::size_t draw(Side side, std::size_t sequence, std::uint64_t position) = 0;
};

/// Replays fixed symbol sequences; throws DimensionError past their end.
class RecordedSource : public SampleSource {
 public:
  RecordedSource(std::vector<std::vector<std::size_t>> left, std::vector<std::vector<std::size_t>> right);
  std::size_t draw(Side side, std::size_t sequence, std::uint64_t position) override;

 private:
  std::vector<std::vector<std::size_t>> left_;
  std::vector<std::vector<std::size_t>> right_;
};

/// The single writer of a snapshot: advancing n -> n+1 appends
/// ceil(alpha(n+1)) - ceil(alpha n) symbols to every left sequence (possibly
/// zero) and likewise for the right database with beta.
class GrowingDatabase {
 public:
  GrowingDatabase(const ProblemDims& dims, std::size_t alphabet_size, const Rates& rates, SampleSource& source);

  void advance();
  void advance_to(std::uint64_t n);

  const DatabaseSnapshot& snapshot() const { return snapshot_; }
  std::uint64_t n() const { return snapshot_.n(); }

 private:
  DatabaseSnapshot snapshot_;
  SampleSource* source_;
};

/// GJS of every (left i, right j) empirical-type pair at one time step. Every
/// hypothesis score is a sum of entries of this table.
class PairScoreTable {
 public:
  explicit PairScoreTable(const DatabaseSnapshot& snapshot);

  double at(std::size_t i, std::size_t j) const { return table_[i * m2_ + j]; }
  /// Sum over the pairs of m, in m's canonical pair order.
  double score(const MatchingSet& m) const;
  /// score() of every set, in order.
  std::vector<double> score_all(std::span<const MatchingSet> sets) const;

 private:
  std::size_t m2_;
  std::vector<double> table_;
};

/// Sum of gjs(left[i], right[j]) over the pairs of m.
double g_combined(std::span<const Distribution> left, std::span<const Distribution> right, const MatchingSet& m,
                  const Rates& rates);

/// g_combined on the snapshot's empirical types.
double score(const DatabaseSnapshot& snapshot, const MatchingSet& m, const Rates& rates);

/// Stopping threshold of the known-k sequential test:
/// ((k+1)|X| log(n alpha + 2) + k |X| log(n beta + 2)) / n.
double f_threshold(std::uint64_t n, std::size_t k, std::size_t alphabet_size, const Rates& rates);

/// (n2 |X| log(n1 alpha + 2) + n3 |X| log(n1 beta + 2)) / n1.
double g_poly(std::uint64_t n1, std::uint64_t n2, std::uint64_t n3, std::size_t alphabet_size, const Rates& rates);

}  // namespace seqmatch
