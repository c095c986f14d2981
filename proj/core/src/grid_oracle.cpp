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


#include "seqmatch/grid_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "seqmatch/divergence.hpp"
#include "seqmatch/errors.hpp"

namespace seqmatch {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct GridFactor {
  bool left;
  std::size_t index;
  std::vector<double> values;  // probability of symbol 1
  std::vector<double> cost;    // weight * D(Bern(v) || data)
};

struct GridPair {
  std::size_t lf;
  std::size_t rf;
  std::vector<double> gjs;  // [a * n_right + b]
};

double bern_kl(double v, double p) {
  double s = 0.0;
  if (v > 0.0) s += v * std::log(v / p);
  if (v < 1.0) s += (1.0 - v) * std::log((1.0 - v) / (1.0 - p));
  return std::max(s, 0.0);
}

double bern_gjs(double a, double b, double alpha, double beta) {
  if (a == b) return 0.0;
  const double pa[2] = {1.0 - a, a};
  const double pb[2] = {1.0 - b, b};
  return detail::gjs(pa, pb, alpha, beta);
}

}  // namespace

ExponentResult grid_oracle(const SourceModel& model, std::span<const PairSumConstraint> constraints,
                           const GridOptions& options) {
  if (model.alphabet_size() != 2) throw DomainError("grid oracle: binary alphabets only");
  if (options.points < 2) throw DomainError("grid oracle: need at least two points");
  const bool smoothed = !model.has_full_support();
  const SourceModel m = smoothed ? model.smoothed(options.smoothing) : model;
  const double alpha = m.rates().alpha();
  const double beta = m.rates().beta();

  std::vector<GridFactor> factors;
  std::map<std::pair<bool, std::size_t>, std::size_t> factor_of;
  auto factor_id = [&](bool left, std::size_t index) {
    const auto key = std::make_pair(left, index);
    if (auto it = factor_of.find(key); it != factor_of.end()) return it->second;
    const double p = left ? m.left()[index][1] : m.right()[index][1];
    GridFactor f{left, index, {}, {}};
    for (std::size_t k = 0; k < options.points; ++k) {
      f.values.push_back(static_cast<double>(k) / static_cast<double>(options.points - 1));
    }
    if (std::find(f.values.begin(), f.values.end(), p) == f.values.end()) {
      f.values.insert(std::upper_bound(f.values.begin(), f.values.end(), p), p);
    }
    const double w = left ? alpha : beta;
    for (double v : f.values) f.cost.push_back(w * bern_kl(v, p));
    factors.push_back(std::move(f));
    factor_of.emplace(key, factors.size() - 1);
    return factors.size() - 1;
  };

  std::vector<GridPair> pairs;
  std::map<IndexPair, std::size_t> pair_of;
  struct Con {
    std::vector<std::size_t> plus;
    std::vector<std::size_t> minus;
    double bound;
  };
  std::vector<Con> cons;
  auto pair_id = [&](const IndexPair& ij) {
    if (auto it = pair_of.find(ij); it != pair_of.end()) return it->second;
    GridPair gp{factor_id(true, ij.first), factor_id(false, ij.second), {}};
    const auto& a = factors[gp.lf].values;
    const auto& b = factors[gp.rf].values;
    gp.gjs.resize(a.size() * b.size());
    for (std::size_t x = 0; x < a.size(); ++x) {
      for (std::size_t y = 0; y < b.size(); ++y) gp.gjs[x * b.size() + y] = bern_gjs(a[x], b[y], alpha, beta);
    }
    pairs.push_back(std::move(gp));
    pair_of.emplace(ij, pairs.size() - 1);
    return pairs.size() - 1;
  };
  for (const auto& c : constraints) {
    Con k{{}, {}, c.bound};
    for (const auto& p : c.plus) k.plus.push_back(pair_id(p));
    for (const auto& p : c.minus) k.minus.push_back(pair_id(p));
    cons.push_back(std::move(k));
  }

  ExponentResult r;
  r.method = ExponentMethod::kGridOracle;
  r.smoothed = smoothed;
  r.est_error = 1.0 / static_cast<double>(options.points - 1);
  r.note = "grid step " + std::to_string(r.est_error);
  std::vector<std::size_t> best_idx(factors.size(), 0);
  double best = kInf;

  if (factors.size() <= 3) {
    const std::size_t nf = factors.size();
    std::vector<std::size_t> idx(nf, 0);
    auto lhs = [&](const Con& c) {
      double s = 0.0;
      for (std::size_t p : c.plus) s += pairs[p].gjs[idx[pairs[p].lf] * factors[pairs[p].rf].values.size() + idx[pairs[p].rf]];
      for (std::size_t p : c.minus) s -= pairs[p].gjs[idx[pairs[p].lf] * factors[pairs[p].rf].values.size() + idx[pairs[p].rf]];
      return s;
    };
    for (;;) {
      double cost = 0.0;
      for (std::size_t f = 0; f < nf; ++f) cost += factors[f].cost[idx[f]];
      if (cost < best) {
        bool ok = true;
        for (const auto& c : cons) {
          if (lhs(c) > c.bound) {
            ok = false;
            break;
          }
        }
        if (ok) {
          best = cost;
          best_idx = idx;
        }
      }
      std::size_t f = 0;
      while (f < nf && ++idx[f] == factors[f].values.size()) idx[f++] = 0;
      if (f == nf) break;
    }
  } else {
    if (cons.size() != 1 || !cons[0].minus.empty()) {
      throw DomainError("grid oracle: more than three free distributions need a single additive constraint");
    }
    const Con& c = cons[0];
    std::vector<std::size_t> seen(factors.size(), 0);
    for (std::size_t p : c.plus) {
      if (seen[pairs[p].lf]++ || seen[pairs[p].rf]++) {
        throw DomainError("grid oracle: constraint pairs share a distribution");
      }
    }
    const std::size_t bins = c.bound > 0.0 ? options.budget_bins : 0;
    // value[k], arg[k]: cheapest grid point of one pair whose GJS fits in budget k.
    std::vector<std::vector<double>> value;
    std::vector<std::vector<std::size_t>> arg;
    for (std::size_t p : c.plus) {
      const auto& gp = pairs[p];
      const std::size_t nb = factors[gp.rf].values.size();
      std::vector<double> v(bins + 1, kInf);
      std::vector<std::size_t> a(bins + 1, 0);
      for (std::size_t cell = 0; cell < gp.gjs.size(); ++cell) {
        const double g = gp.gjs[cell];
        if (g > c.bound) continue;
        std::size_t k = 0;
        if (bins > 0 && g > 0.0) {
          k = static_cast<std::size_t>(std::ceil(g / c.bound * static_cast<double>(bins)));
          if (k > bins) continue;
        } else if (g > 0.0) {
          continue;
        }
        const double cost = factors[gp.lf].cost[cell / nb] + factors[gp.rf].cost[cell % nb];
        if (cost < v[k]) {
          v[k] = cost;
          a[k] = cell;
        }
      }
      for (std::size_t k = 1; k <= bins; ++k) {
        if (v[k - 1] <= v[k]) {
          v[k] = v[k - 1];
          a[k] = a[k - 1];
        }
      }
      value.push_back(std::move(v));
      arg.push_back(std::move(a));
    }
    // Min-plus convolution with split tracking for witness recovery.
    std::vector<double> acc = value[0];
    std::vector<std::vector<std::size_t>> split;
    for (std::size_t q = 1; q < value.size(); ++q) {
      std::vector<double> next(bins + 1, kInf);
      std::vector<std::size_t> s(bins + 1, 0);
      for (std::size_t k = 0; k <= bins; ++k) {
        for (std::size_t j = 0; j <= k; ++j) {
          const double v = acc[j] + value[q][k - j];
          if (v < next[k]) {
            next[k] = v;
            s[k] = j;
          }
        }
      }
      acc = std::move(next);
      split.push_back(std::move(s));
    }
    best = acc[bins];
    if (best < kInf) {
      std::size_t k = bins;
      for (std::size_t q = value.size(); q-- > 0;) {
        const std::size_t j = q > 0 ? split[q - 1][k] : 0;
        const std::size_t budget = q > 0 ? k - j : k;
        const auto& gp = pairs[c.plus[q]];
        const std::size_t nb = factors[gp.rf].values.size();
        best_idx[gp.lf] = arg[q][budget] / nb;
        best_idx[gp.rf] = arg[q][budget] % nb;
        k = j;
      }
    }
  }

  if (best == kInf) {
    r.value = ExtendedReal::infinity();
    r.note += "; no feasible grid point";
    return r;
  }
  r.value = best;
  Witness w{{model.left().begin(), model.left().end()}, {model.right().begin(), model.right().end()}, {}};
  for (std::size_t f = 0; f < factors.size(); ++f) {
    const double v = factors[f].values[best_idx[f]];
    (factors[f].left ? w.omega[factors[f].index] : w.psi[factors[f].index]) = Distribution::bernoulli(v);
  }
  r.witness = std::move(w);
  return r;
}

}  // namespace seqmatch
