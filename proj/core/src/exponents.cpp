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


#include "seqmatch/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <nlohmann/json.hpp>

#include "kernel_problem.hpp"
#include "seqmatch/divergence.hpp"
#include "seqmatch/errors.hpp"
#include "seqmatch/scoring.hpp"

namespace seqmatch {
namespace {

using detail::KernelProblem;
using detail::Point;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Nested Lagrangian bisection: for fixed multipliers of constraints [0, level),
// find the smallest multiplier of constraint `level` that makes it hold, after
// the deeper levels have been made to hold the same way.
class NestedBisection {
 public:
  NestedBisection(const KernelProblem& kp, const SolverOptions& o)
      : kp_(kp), o_(o), mu_(kp.num_constraints(), 0.0), x_(kp.data_point()) {}

  void run() { solve(0); }
  const Point& point() const { return x_; }
  const std::vector<double>& multipliers() const { return mu_; }

 private:
  bool holds(std::size_t level) const { return kp_.constraint_lhs(x_, level) <= kp_.constraint(level).bound; }

  void solve(std::size_t level) {
    if (level == kp_.num_constraints()) {
      const auto w = kp_.pair_weights(mu_);
      kp_.minimize_nonnegative(w, x_, o_.max_inner_iterations, o_.inner_tolerance);
      return;
    }
    mu_[level] = 0.0;
    solve(level + 1);
    if (holds(level)) return;

    double lo = 0.0;
    double hi = 1.0;
    for (;;) {
      mu_[level] = hi;
      solve(level + 1);
      if (holds(level) || hi > 1e15) break;
      lo = hi;
      hi *= 4.0;
    }
    Point x_hi = x_;
    std::vector<double> mu_hi = mu_;
    const double bound = kp_.constraint(level).bound;
    for (std::size_t step = 0; step < o_.max_bisection_steps; ++step) {
      if (bound - kp_.constraint_lhs(x_hi, level) <= o_.residual_tolerance) break;
      if (hi - lo <= 1e-15 * hi) break;
      const double mid = 0.5 * (lo + hi);
      mu_[level] = mid;
      solve(level + 1);
      if (holds(level)) {
        hi = mid;
        x_hi = x_;
        mu_hi = mu_;
      } else {
        lo = mid;
      }
    }
    x_ = std::move(x_hi);
    mu_ = std::move(mu_hi);
  }

  const KernelProblem& kp_;
  const SolverOptions& o_;
  std::vector<double> mu_;
  Point x_;
};

ExponentResult finish(const KernelProblem& kp, const Point& x, const SourceModel& model, ExponentMethod method,
                      double est_error, bool smoothed, std::string note) {
  ExponentResult r;
  r.value = kp.objective(x);
  r.method = method;
  r.est_error = est_error;
  r.smoothed = smoothed;
  Witness w;
  kp.expand(x, model, w.omega, w.psi);
  r.witness = std::move(w);
  r.note = std::move(note);
  return r;
}

// Rounding slack for relative constraints: both sides are sums of the same kind of
// terms and can tie exactly in value while differing in the last bits.
constexpr double kSignedSlack = 1e-12;

Point blend(const Point& a, const Point& b, double t) {
  Point out = a;
  for (std::size_t f = 0; f < out.size(); ++f) {
    for (std::size_t s = 0; s < out[f].size(); ++s) out[f][s] = (1.0 - t) * a[f][s] + t * b[f][s];
  }
  return out;
}

// One constraint containing subtracted terms: the Lagrangian is no longer convex.
// Runs the augmented-Lagrangian search from several starts (among them the points
// where all left or all right factors share one distribution, which balance the
// two sides whenever t permutes the indices of l), pulls each end point
// back to the feasible side along the segment towards the point with all added
// pairs collapsed (always feasible), and keeps the best.
Point solve_signed(const KernelProblem& kp, const SolverOptions& o, double& est_error) {
  if (kp.num_constraints() != 1) throw DomainError("exponent_constrained: a relative constraint must come alone");
  const auto& c = kp.constraint(0);
  const Point anchor = kp.collapsed(c.plus);
  Point best = anchor;
  double best_value = kp.objective(anchor);
  est_error = 0.0;

  std::vector<std::size_t> every = c.plus;
  every.insert(every.end(), c.minus.begin(), c.minus.end());
  const Point data = kp.data_point();
  std::vector<std::size_t> left_side;
  std::vector<std::size_t> right_side;
  for (std::size_t f = 0; f < kp.num_factors(); ++f) (kp.factor(f).left ? left_side : right_side).push_back(f);
  const std::vector<Point> starts = {data,          anchor, kp.collapsed(every), blend(data, anchor, 0.5),
                                     kp.merged(left_side), kp.merged(right_side)};
  const std::size_t inner = std::max<std::size_t>(o.max_inner_iterations / 20, 100);
  auto consider = [&](const Point& x, double raw) {
    const double v = kp.objective(x);
    if (v < best_value) {
      best_value = v;
      best = x;
      est_error = v - std::min(v, raw);
    }
  };
  for (const Point& start : starts) {
    if (kp.feasible(start, kSignedSlack)) consider(start, kp.objective(start));
    Point x = start;
    kp.minimize_augmented(x, inner, o.inner_tolerance);
    const double raw = kp.objective(x);
    if (!kp.feasible(x, kSignedSlack)) {
      double lo = 0.0;
      double hi = 1.0;
      for (int step = 0; step < 60; ++step) {
        const double mid = 0.5 * (lo + hi);
        (kp.feasible(blend(x, anchor, mid), kSignedSlack) ? hi : lo) = mid;
      }
      x = blend(x, anchor, hi);
    }
    consider(x, raw);
  }
  return best;
}

void require_matched(const SourceModel& model, const char* what) {
  if (model.is_null()) throw ModelError(std::string(what) + " needs a model with a true matching");
}

ExponentResult infinite(std::string note) {
  ExponentResult r;
  r.value = ExtendedReal::infinity();
  r.note = std::move(note);
  return r;
}

struct Candidate {
  std::vector<MatchingSet> sets;
  double lower_bound;
  std::size_t order;
};

// Branch and bound over candidate constraint sets, each a list of hypotheses with
// a shared bound lambda. Candidates whose lower bound reaches the best value found
// so far cannot improve it and are skipped.
ExponentResult minimize_over(const SourceModel& model, std::vector<Candidate> candidates, double lambda,
                             const SolverOptions& o) {
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.lower_bound < b.lower_bound; });
  ExponentResult best = infinite("no candidate hypothesis");
  for (const auto& cand : candidates) {
    if (best.value.is_finite() && cand.lower_bound >= best.value.value()) break;
    std::vector<PairSumConstraint> cs;
    for (const auto& s : cand.sets) cs.push_back(score_at_most(s, lambda));
    ExponentResult r = exponent_constrained(model, cs, o);
    if (r.value < best.value) {
      r.witness->hypotheses = cand.sets;
      best = std::move(r);
    }
  }
  return best;
}

// Single-pair exponents min E s.t. GJS(Omega_i, Psi_j) <= lambda, indexed i*m2 + j.
std::vector<double> pair_values(const SourceModel& model, double lambda, const SolverOptions& o) {
  std::vector<double> out;
  for (std::size_t i = 0; i < model.dims().m1; ++i) {
    for (std::size_t j = 0; j < model.dims().m2; ++j) {
      const PairSumConstraint c{{{i, j}}, {}, lambda};
      out.push_back(exponent_constrained(model, std::span(&c, 1), o).value.value());
    }
  }
  return out;
}

double pair_lower_bound(const MatchingSet& t, const std::vector<double>& values, std::size_t m2) {
  double lb = 0.0;
  for (const auto& [i, j] : t.pairs()) lb = std::max(lb, values[i * m2 + j]);
  return lb;
}

void check_lambda(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be finite and >= 0");
}

}  // namespace

const char* method_name(ExponentMethod m) {
  switch (m) {
    case ExponentMethod::kClosedForm:
      return "closed_form";
    case ExponentMethod::kDualBisection:
      return "dual_bisection";
    case ExponentMethod::kGridOracle:
      return "grid_oracle";
  }
  return "unknown";
}

PairSumConstraint score_at_most(const MatchingSet& t, double bound) {
  return {{t.pairs().begin(), t.pairs().end()}, {}, bound};
}

PairSumConstraint score_not_above(const MatchingSet& t, const MatchingSet& l) {
  return {set_difference(t, l), set_difference(l, t), 0.0};
}

ExtendedReal objective_E(const SourceModel& model, std::span<const Distribution> omega,
                         std::span<const Distribution> psi) {
  if (omega.size() != model.dims().m1 || psi.size() != model.dims().m2) {
    throw DimensionError("objective_E: witness sizes do not match the model");
  }
  ExtendedReal e = 0.0;
  for (std::size_t i = 0; i < omega.size(); ++i) e = e + model.rates().alpha() * kl(omega[i], model.left()[i]);
  for (std::size_t j = 0; j < psi.size(); ++j) e = e + model.rates().beta() * kl(psi[j], model.right()[j]);
  return e;
}

double constraint_lhs(const PairSumConstraint& c, std::span<const Distribution> omega,
                      std::span<const Distribution> psi, const Rates& rates) {
  double s = 0.0;
  for (const auto& [i, j] : c.plus) s += gjs(omega[i], psi[j], rates);
  for (const auto& [i, j] : c.minus) s -= gjs(omega[i], psi[j], rates);
  return s;
}

ExponentResult exponent_constrained(const SourceModel& model, std::span<const PairSumConstraint> constraints,
                                    const SolverOptions& options) {
  for (const auto& c : constraints) {
    if (!(c.bound >= 0.0) || !std::isfinite(c.bound)) throw DomainError("constraint bounds must be finite and >= 0");
  }
  {
    bool data_ok = true;
    for (const auto& c : constraints) {
      if (constraint_lhs(c, model.left(), model.right(), model.rates()) > c.bound) data_ok = false;
    }
    if (data_ok) {
      ExponentResult r;
      r.value = 0.0;
      r.method = ExponentMethod::kDualBisection;
      r.witness = Witness{{model.left().begin(), model.left().end()}, {model.right().begin(), model.right().end()}, {}};
      r.note = "data distributions satisfy the constraints";
      return r;
    }
  }

  const bool smoothed = !model.has_full_support();
  const SourceModel m = smoothed ? model.smoothed(options.smoothing) : model;
  const KernelProblem kp(m, constraints);

  if (kp.has_minus_terms()) {
    double est = 0.0;
    const Point x = solve_signed(kp, options, est);
    return finish(kp, x, model, ExponentMethod::kDualBisection, est, smoothed,
                  "relative constraint: local descent, feasible upper bound");
  }

  const bool all_zero = std::all_of(constraints.begin(), constraints.end(), [](const auto& c) { return c.bound == 0.0; });
  if (all_zero) {
    std::vector<std::size_t> all(kp.num_pairs());
    std::iota(all.begin(), all.end(), 0);
    return finish(kp, kp.collapsed(all), model, ExponentMethod::kClosedForm, 0.0, smoothed,
                  "zero bounds: constrained pairs collapse to a common distribution");
  }

  NestedBisection nb(kp, options);
  nb.run();
  double gap = 0.0;
  for (std::size_t c = 0; c < kp.num_constraints(); ++c) {
    gap += nb.multipliers()[c] * std::max(0.0, kp.constraint(c).bound - kp.constraint_lhs(nb.point(), c));
  }
  return finish(kp, nb.point(), model, ExponentMethod::kDualBisection, gap, smoothed, "");
}

ExponentResult exponent_E_s(const SourceModel& model, const HypothesisSpace& space) {
  require_matched(model, "E_s");
  const MatchingSet& l = model.truth();
  const auto sets = space.of_k(l.k());
  if (sets.size() < 2) return infinite("no competing hypothesis");
  const double a = model.rates().alpha();
  const double b = model.rates().beta();
  const double order = b / (a + b);

  ExponentResult best = infinite("");
  best.method = ExponentMethod::kClosedForm;
  std::size_t best_t = sets.size();
  for (std::size_t t = 0; t < sets.size(); ++t) {
    if (sets[t] == l) continue;
    ExtendedReal v = 0.0;
    for (const auto& [i, j] : set_difference(sets[t], l)) {
      v = v + a * renyi(model.right()[j], model.left()[i], order);
    }
    if (best_t == sets.size() || v < best.value) {
      best.value = v;
      best_t = t;
    }
  }
  if (best.value.is_finite()) {
    Witness w{{model.left().begin(), model.left().end()}, {model.right().begin(), model.right().end()}, {sets[best_t]}};
    for (const auto& [i, j] : set_difference(sets[best_t], l)) {
      const auto& p = model.left()[i];
      const auto& q = model.right()[j];
      std::vector<double> v(p.alphabet_size());
      for (std::size_t s = 0; s < v.size(); ++s) v[s] = std::pow(p[s], a / (a + b)) * std::pow(q[s], order);
      const double z = std::accumulate(v.begin(), v.end(), 0.0);
      for (double& e : v) e /= z;
      w.omega[i] = Distribution(v);
      w.psi[j] = Distribution(std::move(v));
    }
    best.witness = std::move(w);
  }
  return best;
}

ExponentResult exponent_E_f(const SourceModel& model, const HypothesisSpace& space, const SolverOptions& options) {
  require_matched(model, "E_f");
  const MatchingSet& l = model.truth();
  const auto sets = space.of_k(l.k());
  if (sets.size() < 2) return infinite("no competing hypothesis");
  ExponentResult best = infinite("");
  for (const auto& t : sets) {
    if (t == l) continue;
    const PairSumConstraint c = score_not_above(t, l);
    ExponentResult r = exponent_constrained(model, std::span(&c, 1), options);
    if (r.value < best.value) {
      r.witness->hypotheses = {t};
      best = std::move(r);
    }
  }
  return best;
}

ExponentResult exponent_E_r(const SourceModel& model, const HypothesisSpace& space, double lambda,
                            const SolverOptions& options) {
  check_lambda(lambda);
  if (!model.is_null()) throw ModelError("E_r needs a null model (no matched pair)");
  const auto values = pair_values(model, lambda, options);
  std::vector<Candidate> cands;
  for (const auto& h : space.all()) {
    cands.push_back({{h.set}, pair_lower_bound(h.set, values, model.dims().m2), cands.size()});
  }
  return minimize_over(model, std::move(cands), lambda, options);
}

ExponentResult exponent_F(const SourceModel& model, const HypothesisSpace& space, double lambda,
                          const SolverOptions& options) {
  check_lambda(lambda);
  require_matched(model, "F");
  const auto sets = space.of_k(model.truth().k());
  if (sets.size() < 2) return infinite("fewer than two hypotheses with the true match count");

  std::vector<ExponentResult> single;
  for (const auto& t : sets) {
    const PairSumConstraint c = score_at_most(t, lambda);
    single.push_back(exponent_constrained(model, std::span(&c, 1), options));
  }
  // The value is symmetric in (t1, t2), so unordered pairs suffice.
  std::vector<std::pair<std::size_t, std::size_t>> order;
  std::vector<double> lbs;
  for (std::size_t a = 0; a < sets.size(); ++a) {
    for (std::size_t b = a + 1; b < sets.size(); ++b) {
      order.emplace_back(a, b);
      lbs.push_back(std::max(single[a].value.value(), single[b].value.value()));
    }
  }
  std::vector<std::size_t> idx(order.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return lbs[x] < lbs[y]; });

  ExponentResult best = infinite("");
  for (std::size_t k : idx) {
    if (best.value.is_finite() && lbs[k] >= best.value.value()) break;
    const auto [a, b] = order[k];
    const PairSumConstraint ca = score_at_most(sets[a], lambda);
    const PairSumConstraint cb = score_at_most(sets[b], lambda);
    // If the harder single-constraint optimum already meets the other constraint it is the joint optimum.
    const bool a_harder = single[a].value >= single[b].value;
    const ExponentResult& harder = a_harder ? single[a] : single[b];
    const PairSumConstraint& other = a_harder ? cb : ca;
    ExponentResult r;
    if (constraint_lhs(other, harder.witness->omega, harder.witness->psi, model.rates()) <= lambda) {
      r = harder;
    } else {
      const std::vector<PairSumConstraint> cs{ca, cb};
      r = exponent_constrained(model, cs, options);
    }
    if (r.value < best.value) {
      r.witness->hypotheses = {sets[a], sets[b]};
      best = std::move(r);
    }
  }
  return best;
}

ExponentResult exponent_G(const SourceModel& model, const HypothesisSpace& space, double lambda,
                          const SolverOptions& options) {
  check_lambda(lambda);
  require_matched(model, "G");
  const std::size_t k = model.truth().k();
  if (k >= space.max_k()) return infinite("no hypothesis with more matches than the truth");
  const auto values = pair_values(model, lambda, options);
  std::vector<Candidate> cands;
  for (const auto& h : space.all()) {
    if (h.k <= k) continue;
    cands.push_back({{h.set}, pair_lower_bound(h.set, values, model.dims().m2), cands.size()});
  }
  return minimize_over(model, std::move(cands), lambda, options);
}

QuantityResult quantity_G0(const SourceModel& model) {
  if (!model.is_null()) throw ModelError("G0 needs a null model (no matched pair)");
  QuantityResult r;
  for (std::size_t i = 0; i < model.dims().m1; ++i) {
    for (std::size_t j = 0; j < model.dims().m2; ++j) {
      const double v = gjs(model.left()[i], model.right()[j], model.rates());
      if (v < r.value) {
        r.value = v;
        r.minimizer = MatchingSet({{i, j}});
      }
    }
  }
  return r;
}

QuantityResult quantity_Lambda(const SourceModel& model, const HypothesisSpace& space) {
  require_matched(model, "Lambda");
  const MatchingSet& l = model.truth();
  QuantityResult r;
  for (const auto& t : space.of_k(l.k())) {
    if (t == l) continue;
    double v = 0.0;
    for (const auto& [i, j] : set_difference(t, l)) v += gjs(model.left()[i], model.right()[j], model.rates());
    if (v < r.value) {
      r.value = v;
      r.minimizer = t;
    }
  }
  return r;
}

QuantityResult quantity_kappa(const SourceModel& model, const HypothesisSpace& space) {
  require_matched(model, "kappa");
  const MatchingSet& l = model.truth();
  QuantityResult r;
  if (l.k() >= space.max_k()) return r;
  for (const auto& t : space.of_k(l.k() + 1)) {
    double v = 0.0;
    for (const auto& [i, j] : set_difference(t, l)) v += gjs(model.left()[i], model.right()[j], model.rates());
    if (v < r.value) {
      r.value = v;
      r.minimizer = t;
    }
  }
  return r;
}

QuantityResult quantity_extend_by_one(const SourceModel& model) {
  require_matched(model, "extend-by-one");
  const MatchingSet& l = model.truth();
  QuantityResult r;
  const auto left = l.matched_left();
  const auto right = l.matched_right();
  for (std::size_t i = 0; i < model.dims().m1; ++i) {
    if (std::find(left.begin(), left.end(), i) != left.end()) continue;
    for (std::size_t j = 0; j < model.dims().m2; ++j) {
      if (std::find(right.begin(), right.end(), j) != right.end()) continue;
      const double v = gjs(model.left()[i], model.right()[j], model.rates());
      if (v < r.value) {
        r.value = v;
        std::vector<IndexPair> pairs(l.pairs().begin(), l.pairs().end());
        pairs.emplace_back(i, j);
        r.minimizer = MatchingSet(std::move(pairs));
      }
    }
  }
  return r;
}

namespace {

nlohmann::json extended_to_json(const ExtendedReal& v) {
  if (!v.is_finite()) return "inf";
  return v.value();
}

}  // namespace

void to_json(nlohmann::json& j, const ExponentResult& r) {
  j = nlohmann::json::object();
  j["value"] = extended_to_json(r.value);
  j["method"] = method_name(r.method);
  j["est_error"] = r.est_error;
  j["smoothed"] = r.smoothed;
  if (r.witness) {
    j["witness"] = {{"omega", r.witness->omega}, {"psi", r.witness->psi}, {"hypotheses", r.witness->hypotheses}};
  }
  if (!r.note.empty()) j["note"] = r.note;
}

void to_json(nlohmann::json& j, const QuantityResult& r) {
  j = nlohmann::json::object();
  j["value"] = extended_to_json(r.value);
  if (r.minimizer) j["minimizer"] = *r.minimizer;
}

}  // namespace seqmatch
