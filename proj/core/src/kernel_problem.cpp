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


#include "kernel_problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <utility>

#include "seqmatch/divergence.hpp"
#include "seqmatch/errors.hpp"

namespace seqmatch::detail {
namespace {

constexpr double kFloor = 1e-300;

// In-place softmax of log weights.
void normalize_logs(std::vector<double>& v) {
  const double top = *std::max_element(v.begin(), v.end());
  double sum = 0.0;
  for (double& e : v) {
    e = std::exp(e - top);
    sum += e;
  }
  for (double& e : v) e = std::max(e / sum, kFloor);
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t a) {
  while (parent[a] != a) a = parent[a] = parent[parent[a]];
  return a;
}

}  // namespace

KernelProblem::KernelProblem(const SourceModel& model, std::span<const PairSumConstraint> constraints)
    : alphabet_(model.alphabet_size()), alpha_(model.rates().alpha()), beta_(model.rates().beta()) {
  if (!model.has_full_support()) throw DomainError("KernelProblem: model needs full support");
  std::map<std::pair<bool, std::size_t>, std::size_t> factor_of;
  std::map<IndexPair, std::size_t> pair_of;
  auto factor_id = [&](bool left, std::size_t index) {
    const auto key = std::make_pair(left, index);
    if (auto it = factor_of.find(key); it != factor_of.end()) return it->second;
    const Distribution& d = left ? model.left()[index] : model.right()[index];
    Factor f{left, index, left ? alpha_ : beta_, {}, {d.probs().begin(), d.probs().end()}};
    for (double p : f.data) f.log_data.push_back(std::log(p));
    factors_.push_back(std::move(f));
    factor_of.emplace(key, factors_.size() - 1);
    return factors_.size() - 1;
  };
  auto pair_id = [&](const IndexPair& p) {
    if (p.first >= model.dims().m1 || p.second >= model.dims().m2) {
      throw DimensionError("constraint pair outside the databases");
    }
    if (auto it = pair_of.find(p); it != pair_of.end()) return it->second;
    pairs_.push_back({factor_id(true, p.first), factor_id(false, p.second)});
    pair_of.emplace(p, pairs_.size() - 1);
    return pairs_.size() - 1;
  };
  for (const auto& c : constraints) {
    SignedConstraint sc{{}, {}, c.bound};
    for (const auto& p : c.plus) sc.plus.push_back(pair_id(p));
    for (const auto& p : c.minus) sc.minus.push_back(pair_id(p));
    constraints_.push_back(std::move(sc));
  }
  pairs_of_factor_.resize(factors_.size());
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    pairs_of_factor_[pairs_[p].left_factor].push_back(p);
    pairs_of_factor_[pairs_[p].right_factor].push_back(p);
  }
}

bool KernelProblem::has_minus_terms() const {
  return std::any_of(constraints_.begin(), constraints_.end(), [](const auto& c) { return !c.minus.empty(); });
}

Point KernelProblem::data_point() const {
  Point x;
  for (const auto& f : factors_) x.push_back(f.data);
  return x;
}

double KernelProblem::objective(const Point& x) const {
  double e = 0.0;
  for (std::size_t f = 0; f < factors_.size(); ++f) e += factors_[f].weight * kl_finite(x[f], factors_[f].data);
  return e;
}

double KernelProblem::pair_gjs(const Point& x, std::size_t p) const {
  const auto& a = x[pairs_[p].left_factor];
  const auto& b = x[pairs_[p].right_factor];
  if (a == b) return 0.0;
  return gjs(a, b, alpha_, beta_);
}

double KernelProblem::constraint_lhs(const Point& x, std::size_t c) const {
  double s = 0.0;
  for (std::size_t p : constraints_[c].plus) s += pair_gjs(x, p);
  for (std::size_t p : constraints_[c].minus) s -= pair_gjs(x, p);
  return s;
}

bool KernelProblem::feasible(const Point& x, double slack) const {
  for (std::size_t c = 0; c < constraints_.size(); ++c) {
    if (constraint_lhs(x, c) > constraints_[c].bound + slack) return false;
  }
  return true;
}

std::vector<double> KernelProblem::pair_weights(std::span<const double> multipliers) const {
  std::vector<double> w(pairs_.size(), 0.0);
  for (std::size_t c = 0; c < constraints_.size(); ++c) {
    for (std::size_t p : constraints_[c].plus) w[p] += multipliers[c];
    for (std::size_t p : constraints_[c].minus) w[p] -= multipliers[c];
  }
  return w;
}

double KernelProblem::lagrangian(const Point& x, std::span<const double> w) const {
  double l = objective(x);
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    if (w[p] != 0.0) l += w[p] * pair_gjs(x, p);
  }
  return l;
}

void KernelProblem::minimize_nonnegative(std::span<const double> w, Point& x, std::size_t max_iterations,
                                         double tolerance) const {
  const double total = alpha_ + beta_;
  std::vector<std::vector<double>> log_mix(pairs_.size(), std::vector<double>(alphabet_));
  std::vector<double> acc(alphabet_);
  double prev = lagrangian(x, w);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      if (w[p] <= 0.0) continue;
      const auto& a = x[pairs_[p].left_factor];
      const auto& b = x[pairs_[p].right_factor];
      for (std::size_t s = 0; s < alphabet_; ++s) log_mix[p][s] = std::log((alpha_ * a[s] + beta_ * b[s]) / total);
    }
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      double weight = 1.0;
      acc = factors_[f].log_data;
      for (std::size_t p : pairs_of_factor_[f]) {
        if (w[p] <= 0.0) continue;
        weight += w[p];
        for (std::size_t s = 0; s < alphabet_; ++s) acc[s] += w[p] * log_mix[p][s];
      }
      for (double& e : acc) e /= weight;
      normalize_logs(acc);
      x[f] = acc;
    }
    const double cur = lagrangian(x, w);
    if (std::abs(prev - cur) <= tolerance * (1.0 + std::abs(cur))) break;
    prev = cur;
  }
}

double KernelProblem::minimize_augmented(Point& x, std::size_t max_inner_iterations, double tolerance) const {
  if (constraints_.size() != 1) throw DomainError("minimize_augmented: exactly one constraint expected");
  const double bound = constraints_[0].bound;
  const double total = alpha_ + beta_;
  const std::vector<double> unit_weights = pair_weights(std::vector<double>{1.0});
  double mu = 0.0;
  double rho = 10.0;

  auto merit = [&](const Point& y) {
    const double g = constraint_lhs(y, 0) - bound;
    const double t = std::max(0.0, g + mu / rho);
    return objective(y) + 0.5 * rho * t * t - mu * mu / (2.0 * rho);
  };

  Point grad = x;
  Point trial = x;
  std::vector<std::vector<double>> log_mix(pairs_.size(), std::vector<double>(alphabet_));
  double prev_violation = std::numeric_limits<double>::infinity();
  double prev_objective = objective(x);
  for (int outer = 0; outer < 60; ++outer) {
    double eta = 1.0;
    double current = merit(x);
    for (std::size_t it = 0; it < max_inner_iterations; ++it) {
      const double m_eff = std::max(0.0, mu + rho * (constraint_lhs(x, 0) - bound));
      for (std::size_t p = 0; p < pairs_.size(); ++p) {
        const auto& a = x[pairs_[p].left_factor];
        const auto& b = x[pairs_[p].right_factor];
        for (std::size_t s = 0; s < alphabet_; ++s) log_mix[p][s] = std::log((alpha_ * a[s] + beta_ * b[s]) / total);
      }
      for (std::size_t f = 0; f < factors_.size(); ++f) {
        for (std::size_t s = 0; s < alphabet_; ++s) {
          const double lx = std::log(x[f][s]);
          double g = lx - factors_[f].log_data[s];
          for (std::size_t p : pairs_of_factor_[f]) g += m_eff * unit_weights[p] * (lx - log_mix[p][s]);
          grad[f][s] = factors_[f].weight * g;
        }
      }
      bool moved = false;
      while (eta > 1e-18) {
        for (std::size_t f = 0; f < factors_.size(); ++f) {
          for (std::size_t s = 0; s < alphabet_; ++s) trial[f][s] = std::log(x[f][s]) - eta * grad[f][s];
          normalize_logs(trial[f]);
        }
        const double next = merit(trial);
        if (next < current) {
          const bool small = current - next <= tolerance * (1.0 + std::abs(current));
          std::swap(x, trial);
          current = next;
          eta = std::min(eta * 2.0, 1e6);
          moved = !small;
          break;
        }
        eta *= 0.5;
      }
      if (!moved) break;
    }
    const double violation = constraint_lhs(x, 0) - bound;
    mu = std::max(0.0, mu + rho * violation);
    const double obj = objective(x);
    if (violation <= 1e-13 && std::abs(obj - prev_objective) <= 1e-13 * (1.0 + obj)) break;
    if (violation > 0.25 * prev_violation) rho = std::min(rho * 10.0, 1e14);
    prev_violation = std::max(violation, 0.0);
    prev_objective = obj;
  }
  return mu;
}

Point KernelProblem::collapsed(std::span<const std::size_t> pair_positions) const {
  std::vector<std::size_t> parent(factors_.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t p : pair_positions) {
    const std::size_t a = find_root(parent, pairs_[p].left_factor);
    const std::size_t b = find_root(parent, pairs_[p].right_factor);
    if (a != b) parent[a] = b;
  }
  Point x = data_point();
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t f = 0; f < factors_.size(); ++f) groups[find_root(parent, f)].push_back(f);
  for (const auto& [root, members] : groups) {
    if (members.size() < 2) continue;
    std::vector<double> acc(alphabet_, 0.0);
    double weight = 0.0;
    for (std::size_t f : members) {
      weight += factors_[f].weight;
      for (std::size_t s = 0; s < alphabet_; ++s) acc[s] += factors_[f].weight * factors_[f].log_data[s];
    }
    for (double& e : acc) e /= weight;
    normalize_logs(acc);
    for (std::size_t f : members) x[f] = acc;
  }
  return x;
}

Point KernelProblem::merged(std::span<const std::size_t> factor_ids) const {
  Point x = data_point();
  if (factor_ids.empty()) return x;
  std::vector<double> acc(alphabet_, 0.0);
  double weight = 0.0;
  for (std::size_t f : factor_ids) {
    weight += factors_[f].weight;
    for (std::size_t s = 0; s < alphabet_; ++s) acc[s] += factors_[f].weight * factors_[f].log_data[s];
  }
  for (double& e : acc) e /= weight;
  normalize_logs(acc);
  for (std::size_t f : factor_ids) x[f] = acc;
  return x;
}

void KernelProblem::expand(const Point& x, const SourceModel& model, std::vector<Distribution>& omega,
                           std::vector<Distribution>& psi) const {
  omega.assign(model.left().begin(), model.left().end());
  psi.assign(model.right().begin(), model.right().end());
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    auto& slot = factors_[f].left ? omega[factors_[f].index] : psi[factors_[f].index];
    slot = Distribution(x[f]);
  }
}

}  // namespace seqmatch::detail
