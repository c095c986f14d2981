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

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "seqmatch/matching.hpp"

// Helpers shared by the test-statistic tests: independent score computation
// straight from symbol counts.

namespace seqmatch::testing {

using Seqs = std::vector<std::vector<std::size_t>>;

inline Seqs bernoulli_seqs(const std::vector<double>& ps, std::size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Seqs out;
  for (double p : ps) {
    std::bernoulli_distribution b(p);
    auto& s = out.emplace_back(length);
    for (auto& x : s) x = b(rng) ? 1 : 0;
  }
  return out;
}

inline std::vector<double> prefix_counts(const std::vector<std::size_t>& seq, std::size_t len, std::size_t alphabet) {
  std::vector<double> c(alphabet, 0.0);
  for (std::size_t n = 0; n < len; ++n) c[seq[n]] += 1;
  return c;
}

inline double gjs_counts(const std::vector<double>& a, const std::vector<double>& b, double alpha, double beta) {
  double na = 0;
  double nb = 0;
  for (double x : a) na += x;
  for (double x : b) nb += x;
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double p = a[i] / na;
    const double q = b[i] / nb;
    const double r = (alpha * p + beta * q) / (alpha + beta);
    if (p > 0) s += alpha * p * std::log(p / r);
    if (q > 0) s += beta * q * std::log(q / r);
  }
  return s;
}

inline std::uint64_t ceil_len(double rate, std::uint64_t n) {
  return static_cast<std::uint64_t>(std::ceil(rate * static_cast<double>(n) - 1e-9));
}

/// Score of matching m at time n from raw sequences.
inline double oracle_score(const MatchingSet& m, const Seqs& left, const Seqs& right, std::uint64_t n,
                           std::size_t alphabet, double alpha, double beta) {
  double s = 0;
  for (const auto& [i, j] : m.pairs()) {
    s += gjs_counts(prefix_counts(left[i], ceil_len(alpha, n), alphabet),
                    prefix_counts(right[j], ceil_len(beta, n), alphabet), alpha, beta);
  }
  return s;
}

inline double oracle_threshold(std::uint64_t n, std::size_t k, std::size_t alphabet, double alpha, double beta) {
  const double x = static_cast<double>(alphabet);
  const double nn = static_cast<double>(n);
  return ((k + 1) * x * std::log(nn * alpha + 2) + k * x * std::log(nn * beta + 2)) / nn;
}

}  // namespace seqmatch::testing
