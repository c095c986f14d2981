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

#include <nlohmann/json_fwd.hpp>

namespace seqmatch {

/// Probability vector on the finite alphabet {0, ..., alphabet_size-1}.
///
/// Invariants: alphabet_size >= 2, all weights >= 0, weights sum to 1 within
/// 1e-12. Inputs whose sum is off by more than 1e-12 but at most 1e-9 are
/// renormalized; anything further off is rejected with DomainError.
class Distribution {
 public:
  static constexpr double kNormalizeTolerance = 1e-9;
  static constexpr double kExactTolerance = 1e-12;

  explicit Distribution(std::vector<double> probs);

  /// [1-p, p]: symbol 1 is the "success" symbol.
  static Distribution bernoulli(double p);
  static Distribution uniform(std::size_t alphabet_size);

  std::size_t alphabet_size() const { return probs_.size(); }
  double operator[](std::size_t symbol) const { return probs_[symbol]; }
  std::span<const double> probs() const { return probs_; }

  bool has_full_support() const;

  /// Mixes eps of uniform mass in when some symbol has zero probability; returns *this unchanged otherwise.
  Distribution smoothed(double eps) const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::vector<double> probs_;
};

/// Per-symbol counts of a finite sample. Single-writer: push() appends one observation.
class EmpiricalType {
 public:
  explicit EmpiricalType(std::size_t alphabet_size);
  EmpiricalType(std::vector<std::uint64_t> counts);  // NOLINT(google-explicit-constructor)

  void push(std::size_t symbol);

  std::size_t alphabet_size() const { return counts_.size(); }
  std::uint64_t length() const { return length_; }
  std::uint64_t count(std::size_t symbol) const { return counts_[symbol]; }
  std::span<const std::uint64_t> counts() const { return counts_; }

  /// counts / length. Requires length() > 0.
  Distribution as_distribution() const;

  /// Same empirical distribution (cross-multiplied integer comparison, exact).
  bool same_type_as(const EmpiricalType& other) const;

  friend bool operator==(const EmpiricalType&, const EmpiricalType&) = default;

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t length_ = 0;
};

/// Sampling rates (alpha, beta) of the two databases. Both strictly positive.
class Rates {
 public:
  Rates(double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  /// ceil(alpha * n): left sequence length at time n.
  std::uint64_t xi(std::uint64_t n) const;
  /// ceil(beta * n): right sequence length at time n.
  std::uint64_t chi(std::uint64_t n) const;

  friend bool operator==(const Rates&, const Rates&) = default;

 private:
  double alpha_;
  double beta_;
};

/// ceil(rate * n) with a relative guard so 0.7*10 maps to 7, not 8.
std::uint64_t scaled_length(double rate, std::uint64_t n);

void to_json(nlohmann::json& j, const Distribution& d);
/// Accepts a JSON array of probabilities or the string shorthand "bern:<p>".
Distribution distribution_from_json(const nlohmann::json& j);

}  // namespace seqmatch
