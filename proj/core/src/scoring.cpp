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

#include "seqmatch/scoring.hpp"

#include <cmath>
#include <string>

#include "seqmatch/divergence.hpp"
#include "seqmatch/errors.hpp"

namespace seqmatch {
namespace {

std::vector<double> frequencies(const EmpiricalType& t) {
  std::vector<double> p(t.alphabet_size());
  const double n = static_cast<double>(t.length());
  for (std::size_t a = 0; a < p.size(); ++a) p[a] = static_cast<double>(t.count(a)) / n;
  return p;
}

}  // namespace

DatabaseSnapshot::DatabaseSnapshot(const ProblemDims& dims, std::size_t alphabet_size, const Rates& rates)
    : dims_(dims),
      alphabet_size_(alphabet_size),
      rates_(rates),
      left_(dims.m1, EmpiricalType(alphabet_size)),
      right_(dims.m2, EmpiricalType(alphabet_size)) {}

DatabaseSnapshot DatabaseSnapshot::from_sequences(const ProblemDims& dims, std::size_t alphabet_size,
                                                  const Rates& rates, std::uint64_t n,
                                                  const std::vector<std::vector<std::size_t>>& left_sequences,
                                                  const std::vector<std::vector<std::size_t>>& right_sequences) {
  if (left_sequences.size() != dims.m1 || right_sequences.size() != dims.m2) {
    throw DimensionError("from_sequences: sequence counts do not match the database sizes");
  }
  DatabaseSnapshot s(dims, alphabet_size, rates);
  s.n_ = n;
  for (std::size_t i = 0; i < dims.m1; ++i) {
    if (left_sequences[i].size() != rates.xi(n)) {
      throw DimensionError("from_sequences: left sequence " + std::to_string(i + 1) + " has length " +
                           std::to_string(left_sequences[i].size()) + ", expected " + std::to_string(rates.xi(n)));
    }
    for (std::size_t x : left_sequences[i]) s.left_[i].push(x);
  }
  for (std::size_t j = 0; j < dims.m2; ++j) {
    if (right_sequences[j].size() != rates.chi(n)) {
      throw DimensionError("from_sequences: right sequence " + std::to_string(j + 1) + " has length " +
                           std::to_string(right_sequences[j].size()) + ", expected " + std::to_string(rates.chi(n)));
    }
    for (std::size_t x : right_sequences[j]) s.right_[j].push(x);
  }
  return s;
}

RecordedSource::RecordedSource(std::vector<std::vector<std::size_t>> left, std::vector<std::vector<std::size_t>> right)
    : left_(std::move(left)), right_(std::move(right)) {}

std::size_t RecordedSource::draw(Side side, std::size_t sequence, std::uint64_t position) {
  const auto& db = side == Side::kLeft ? left_ : right_;
  if (sequence >= db.size() || position >= db[sequence].size()) {
    throw DimensionError("RecordedSource: ran past the end of the recorded sequences");
  }
  return db[sequence][position];
}

GrowingDatabase::GrowingDatabase(const ProblemDims& dims, std::size_t alphabet_size, const Rates& rates,
                                 SampleSource& source)
    : snapshot_(dims, alphabet_size, rates), source_(&source) {}

void GrowingDatabase::advance() {
  auto& s = snapshot_;
  const std::uint64_t next = s.n_ + 1;
  const std::uint64_t left_target = s.rates_.xi(next);
  const std::uint64_t right_target = s.rates_.chi(next);
  for (std::size_t i = 0; i < s.dims_.m1; ++i) {
    auto& t = s.left_[i];
    while (t.length() < left_target) t.push(source_->draw(Side::kLeft, i, t.length()));
  }
  for (std::size_t j = 0; j < s.dims_.m2; ++j) {
    auto& t = s.right_[j];
    while (t.length() < right_target) t.push(source_->draw(Side::kRight, j, t.length()));
  }
  s.n_ = next;
}

void GrowingDatabase::advance_to(std::uint64_t n) {
  while (snapshot_.n() < n) advance();
}

PairScoreTable::PairScoreTable(const DatabaseSnapshot& snapshot)
    : m2_(snapshot.dims().m2), table_(snapshot.dims().m1 * snapshot.dims().m2, 0.0) {
  const auto& dims = snapshot.dims();
  const double alpha = snapshot.rates().alpha();
  const double beta = snapshot.rates().beta();
  std::vector<std::vector<double>> left(dims.m1);
  std::vector<std::vector<double>> right(dims.m2);
  for (std::size_t i = 0; i < dims.m1; ++i) left[i] = frequencies(snapshot.left(i));
  for (std::size_t j = 0; j < dims.m2; ++j) right[j] = frequencies(snapshot.right(j));
  for (std::size_t i = 0; i < dims.m1; ++i) {
    for (std::size_t j = 0; j < dims.m2; ++j) {
      if (snapshot.left(i).same_type_as(snapshot.right(j))) continue;  // exactly zero
      table_[i * m2_ + j] = detail::gjs(left[i], right[j], alpha, beta);
    }
  }
}

double PairScoreTable::score(const MatchingSet& m) const {
  double s = 0.0;
  for (const auto& [i, j] : m.pairs()) s += at(i, j);
  return s;
}

std::vector<double> PairScoreTable::score_all(std::span<const MatchingSet> sets) const {
  std::vector<double> out;
  out.reserve(sets.size());
  for (const auto& m : sets) out.push_back(score(m));
  return out;
}

double g_combined(std::span<const Distribution> left, std::span<const Distribution> right, const MatchingSet& m,
                  const Rates& rates) {
  double s = 0.0;
  for (const auto& [i, j] : m.pairs()) {
    if (i >= left.size() || j >= right.size()) throw DimensionError("g_combined: pair index out of range");
    s += gjs(left[i], right[j], rates);
  }
  return s;
}

double score(const DatabaseSnapshot& snapshot, const MatchingSet& m, const Rates& rates) {
  double s = 0.0;
  for (const auto& [i, j] : m.pairs()) {
    if (i >= snapshot.dims().m1 || j >= snapshot.dims().m2) throw DimensionError("score: pair index out of range");
    const auto& x = snapshot.left(i);
    const auto& y = snapshot.right(j);
    if (x.same_type_as(y)) continue;
    s += gjs(x.as_distribution(), y.as_distribution(), rates);
  }
  return s;
}

double f_threshold(std::uint64_t n, std::size_t k, std::size_t alphabet_size, const Rates& rates) {
  return g_poly(n, k + 1, k, alphabet_size, rates);
}

double g_poly(std::uint64_t n1, std::uint64_t n2, std::uint64_t n3, std::size_t alphabet_size, const Rates& rates) {
  if (n1 < 1) throw DomainError("g_poly: n1 must be >= 1");
  const double x = static_cast<double>(alphabet_size);
  const double n = static_cast<double>(n1);
  return (static_cast<double>(n2) * x * std::log(n * rates.alpha() + 2.0) +
          static_cast<double>(n3) * x * std::log(n * rates.beta() + 2.0)) /
         n;
}

}  // namespace seqmatch
