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
#include <span>
#include <vector>

#include "seqmatch/exponents.hpp"
#include "seqmatch/model.hpp"

// Internal representation of one constrained exponent problem after dropping
// every distribution that no constraint touches (those stay at their data
// distribution, contributing zero to the objective).

namespace seqmatch::detail {

struct Factor {
  bool left;
  std::size_t index;
  double weight;  // alpha for left factors, beta for right ones
  std::vector<double> log_data;
  std::vector<double> data;
};

struct PairTerm {
  std::size_t left_factor;
  std::size_t right_factor;
};

struct SignedConstraint {
  std::vector<std::size_t> plus;   // PairTerm positions
  std::vector<std::size_t> minus;  // PairTerm positions
  double bound;
};

using Point = std::vector<std::vector<double>>;

class KernelProblem {
 public:
  /// `model` must have full support.
  KernelProblem(const SourceModel& model, std::span<const PairSumConstraint> constraints);

  std::size_t num_factors() const { return factors_.size(); }
  std::size_t num_pairs() const { return pairs_.size(); }
  std::size_t num_constraints() const { return constraints_.size(); }
  const Factor& factor(std::size_t f) const { return factors_[f]; }
  const PairTerm& pair(std::size_t p) const { return pairs_[p]; }
  const SignedConstraint& constraint(std::size_t c) const { return constraints_[c]; }
  bool has_minus_terms() const;

  Point data_point() const;
  double objective(const Point& x) const;
  double pair_gjs(const Point& x, std::size_t p) const;
  double constraint_lhs(const Point& x, std::size_t c) const;
  bool feasible(const Point& x, double slack = 0.0) const;

  /// Per-pair Lagrange weights for one multiplier per constraint.
  std::vector<double> pair_weights(std::span<const double> multipliers) const;
  /// objective + sum_p w_p GJS_p.
  double lagrangian(const Point& x, std::span<const double> w) const;

  /// Exact block-coordinate minimization of the Lagrangian for non-negative weights,
  /// using GJS(a, b) = min_V alpha D(a||V) + beta D(b||V). Warm-starts from x.
  void minimize_nonnegative(std::span<const double> w, Point& x, std::size_t max_iterations,
                            double tolerance) const;
  /// Local search for a single constraint with subtracted terms, where the Lagrangian is
  /// not convex: augmented Lagrangian with backtracking exponentiated-gradient inner steps,
  /// started from x. x may end marginally infeasible. Returns the final multiplier.
  double minimize_augmented(Point& x, std::size_t max_inner_iterations, double tolerance) const;

  /// Minimizer when the listed pairs must have GJS exactly zero: every connected
  /// group of factors collapses to the weighted geometric mean of its data.
  Point collapsed(std::span<const std::size_t> pair_positions) const;

  /// Data point with the listed factors replaced by their common weighted geometric mean.
  Point merged(std::span<const std::size_t> factor_ids) const;

  /// Full (Omega, Psi) with untouched distributions taken from `model`.
  void expand(const Point& x, const SourceModel& model, std::vector<Distribution>& omega,
              std::vector<Distribution>& psi) const;

 private:
  std::size_t alphabet_;
  double alpha_;
  double beta_;
  std::vector<Factor> factors_;
  std::vector<PairTerm> pairs_;
  std::vector<SignedConstraint> constraints_;
  std::vector<std::vector<std::size_t>> pairs_of_factor_;
};

}  // namespace seqmatch::detail
