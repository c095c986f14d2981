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
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "seqmatch/distribution.hpp"
#include "seqmatch/extended_real.hpp"
#include "seqmatch/matching.hpp"
#include "seqmatch/model.hpp"

// Error exponents of the matching tests. Every constrained exponent minimizes
//   E(Omega, Psi) = sum_i alpha D(Omega_i || P_i) + sum_j beta D(Psi_j || Q_j)
// over product simplices subject to bounds on sums of pairwise GJS terms.

namespace seqmatch {

enum class ExponentMethod { kClosedForm, kDualBisection, kGridOracle };

const char* method_name(ExponentMethod m);

struct Witness {
  std::vector<Distribution> omega;
  std::vector<Distribution> psi;
  /// The hypotheses whose constraints produced the minimum (one, or two for F).
  std::vector<MatchingSet> hypotheses;
};

struct ExponentResult {
  ExtendedReal value = ExtendedReal::infinity();
  ExponentMethod method = ExponentMethod::kClosedForm;
  /// Upper bound on |value - true minimum| as far as the method can tell (duality gap
  /// for the solver, grid resolution bound for the oracle, 0 for closed forms).
  double est_error = 0.0;
  /// The model had zero probabilities and was smoothed before optimizing.
  bool smoothed = false;
  std::optional<Witness> witness;
  std::string note;
};

/// sum over plus pairs of GJS(Omega_i, Psi_j) - sum over minus pairs <= bound.
struct PairSumConstraint {
  std::vector<IndexPair> plus;
  std::vector<IndexPair> minus;
  double bound = 0.0;
};

/// G_t(Omega, Psi) <= bound.
PairSumConstraint score_at_most(const MatchingSet& t, double bound);
/// G_t(Omega, Psi) <= G_l(Omega, Psi); pairs shared by t and l cancel.
PairSumConstraint score_not_above(const MatchingSet& t, const MatchingSet& l);

/// E(Omega, Psi) for the model's (P, Q, alpha, beta). Infinite when some Omega_i
/// puts mass where P_i has none.
ExtendedReal objective_E(const SourceModel& model, std::span<const Distribution> omega,
                         std::span<const Distribution> psi);

/// Value of one constraint's left-hand side at (omega, psi).
double constraint_lhs(const PairSumConstraint& c, std::span<const Distribution> omega,
                      std::span<const Distribution> psi, const Rates& rates);

struct SolverOptions {
  /// Mass mixed into distributions with zeros before optimizing.
  double smoothing = 1e-9;
  std::size_t max_inner_iterations = 200000;
  double inner_tolerance = 1e-14;
  std::size_t max_bisection_steps = 100;
  double residual_tolerance = 1e-10;
};

/// min E subject to all constraints. Constraints with only plus pairs are convex and
/// solved exactly up to tolerance by Lagrangian bisection over an alternating
/// minimization inner loop; constraints with minus pairs (at most one) use
/// exponentiated-gradient descent and yield a feasible upper bound. Returns 0 with
/// witness (P, Q) when the data already satisfy every constraint.
ExponentResult exponent_constrained(const SourceModel& model, std::span<const PairSumConstraint> constraints,
                                    const SolverOptions& options = {});

/// Sequential-test mismatch exponent, closed form:
///   min over t != l of sum over (i,j) in t\l of alpha * renyi(Q_j, P_i, beta/(alpha+beta)).
/// Throws ModelError for a null model. +inf when the truth's k admits a single matching.
ExponentResult exponent_E_s(const SourceModel& model, const HypothesisSpace& space);

/// Fixed-length mismatch exponent: min over t != l of min E subject to G_t <= G_l.
ExponentResult exponent_E_f(const SourceModel& model, const HypothesisSpace& space,
                            const SolverOptions& options = {});

/// False-alarm exponent: min over every hypothesis (h,t) of min E subject to G_t^h <= lambda.
/// Throws ModelError unless the model is null.
ExponentResult exponent_E_r(const SourceModel& model, const HypothesisSpace& space, double lambda,
                            const SolverOptions& options = {});

/// min over t1 != t2 (k = truth's k) of min E subject to G_t1 <= lambda and G_t2 <= lambda.
ExponentResult exponent_F(const SourceModel& model, const HypothesisSpace& space, double lambda,
                          const SolverOptions& options = {});

/// min over hypotheses with more pairs than the truth of min E subject to G_t^h <= lambda.
ExponentResult exponent_G(const SourceModel& model, const HypothesisSpace& space, double lambda,
                          const SolverOptions& options = {});

struct QuantityResult {
  ExtendedReal value = ExtendedReal::infinity();
  /// The hypothesis (or single pair) achieving the minimum.
  std::optional<MatchingSet> minimizer;
};

/// min over pairs (i,j) of GJS(P_i, Q_j). Throws ModelError unless the model is null.
QuantityResult quantity_G0(const SourceModel& model);
/// min over t != l of the GJS sum over t\l. +inf when only one k-matching exists.
QuantityResult quantity_Lambda(const SourceModel& model, const HypothesisSpace& space);
/// min over (k+1)-matchings of the GJS sum over their pairs outside l. +inf when k = m2.
QuantityResult quantity_kappa(const SourceModel& model, const HypothesisSpace& space);
/// min GJS(P_i, Q_j) over i, j both unmatched by l. +inf when k = m2.
QuantityResult quantity_extend_by_one(const SourceModel& model);

void to_json(nlohmann::json& j, const ExponentResult& r);
void to_json(nlohmann::json& j, const QuantityResult& r);

}  // namespace seqmatch
