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


#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>

#include "seqmatch/divergence.hpp"
#include "seqmatch/exponents.hpp"
#include "seqmatch/matching.hpp"
#include "seqmatch/model.hpp"
#include "seqmatch/rng.hpp"
#include "seqmatch/scoring.hpp"
#include "seqmatch_cli/commands.hpp"

namespace seqmatch::cli {
namespace {

constexpr std::uint64_t kCheckSeed = 20240611;

std::string fmt(double x, int precision = 6) {
  std::ostringstream os;
  os << std::setprecision(precision) << x;
  return os.str();
}

std::string fmt_diff(double computed, double expected, bool pass) {
  std::string s = fmt(computed);
  if (!pass) s += " (diff " + fmt(computed - expected, 3) + ")";
  return s;
}

std::string pairs_text(const std::optional<MatchingSet>& m) {
  if (!m) return "none";
  std::string s = "{";
  for (const auto& [i, j] : m->pairs()) {
    if (s.size() > 1) s += ",";
    s += "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
  }
  return s + "}";
}

std::vector<Distribution> bern(std::initializer_list<double> ps) {
  std::vector<Distribution> out;
  for (double p : ps) out.push_back(Distribution::bernoulli(p));
  return out;
}

class Draws {
 public:
  explicit Draws(std::uint64_t stream) : rng_(kCheckSeed, stream) {}
  double next(double lo, double hi) { return lo + (hi - lo) * rng_.uniform(0, pos_++); }

 private:
  CounterStream rng_;
  std::uint64_t pos_ = 0;
};

void add_tolerance_check(std::vector<PaperCheck>& out, const std::string& name, double computed, double expected,
                         double tol) {
  const bool pass = std::abs(computed - expected) <= tol;
  out.push_back({name, fmt(expected) + " +- " + fmt(tol, 2), fmt_diff(computed, expected, pass), pass});
}

void add_zero_suite(std::vector<PaperCheck>& out, const std::string& name, double threshold,
                    const std::function<double(double)>& value) {
  const double below = value(0.9 * threshold);
  const double at = value(threshold);
  const double above = value(1.1 * threshold);
  const bool pass = below > 1e-6 && at <= 1e-9 && above <= 1e-9;
  out.push_back({name, ">0, 0, 0 at 0.9/1.0/1.1x", fmt(below, 3) + ", " + fmt(at, 3) + ", " + fmt(above, 3), pass});
}

}  // namespace

std::vector<PaperCheck> run_paper_checks(bool perturb) {
  std::vector<PaperCheck> out;
  const Rates unit(1.0, 1.0);

  // Hypothesis counts.
  for (const auto& [m1, m2, k, expected] : {std::tuple{3, 2, 1, 6}, std::tuple{4, 2, 2, 12}}) {
    const ProblemDims dims(m1, m2);
    const auto count = count_hypotheses(dims, k);
    const auto listed = enumerate_matchings(dims, k).size();
    const bool pass = count == static_cast<std::uint64_t>(expected) && listed == count;
    out.push_back({"T_" + std::to_string(k) + " for (m1,m2)=(" + std::to_string(m1) + "," + std::to_string(m2) + ")",
                   std::to_string(expected), std::to_string(count) + " (listed " + std::to_string(listed) + ")",
                   pass});
  }

  // First worked example.
  const double p2 = perturb ? 0.15 : 0.12;
  const SourceModel ex1(ProblemDims(4, 3), bern({0.1, p2, 0.3, 0.6}), bern({0.1, p2, 0.4}),
                        MatchingSet({{0, 0}, {1, 1}}), unit);
  const HypothesisSpace space43(ProblemDims(4, 3));
  const auto lam = quantity_Lambda(ex1, space43);
  add_tolerance_check(out, "example 1: Lambda", lam.value.to_double(), 0.002, 5e-4);
  const MatchingSet lam_arg({{0, 1}, {1, 0}});
  out.push_back({"example 1: Lambda minimizer", pairs_text(lam_arg), pairs_text(lam.minimizer),
                 lam.minimizer == lam_arg});

  // Second worked example and the extend-by-one comparison.
  const SourceModel ex2(ProblemDims(4, 3), bern({0.1, 0.3, 0.15, 0.8}), bern({0.1, 0.3, 0.4}),
                        MatchingSet({{0, 0}, {1, 1}}), unit);
  const auto kap = quantity_kappa(ex2, space43);
  const auto ext = quantity_extend_by_one(ex2);
  add_tolerance_check(out, "example 2: kappa", kap.value.to_double(), 0.0438, 1e-3);
  const MatchingSet kap_arg({{0, 0}, {1, 2}, {2, 1}});
  out.push_back({"example 2: kappa minimizer", pairs_text(kap_arg), pairs_text(kap.minimizer),
                 kap.minimizer == kap_arg});
  add_tolerance_check(out, "example 2: extend-by-one", ext.value.to_double(), 0.0806, 1e-3);
  out.push_back({"example 2: kappa < extend-by-one", "strict", fmt(kap.value.to_double()) + " < " +
                 fmt(ext.value.to_double()), kap.value < ext.value});

  // Zero thresholds of E_r, F and G.
  const SourceModel null_model(ProblemDims(2, 1), bern({0.1, 0.5}), bern({0.9}), std::nullopt, unit);
  const HypothesisSpace space21(ProblemDims(2, 1));
  const double g0 = quantity_G0(null_model).value.to_double();
  add_zero_suite(out, "E_r zero threshold at G0", g0,
                 [&](double l) { return exponent_E_r(null_model, space21, l).value.to_double(); });
  add_zero_suite(out, "F zero threshold at Lambda (example 1)", lam.value.to_double(),
                 [&](double l) { return exponent_F(ex1, space43, l).value.to_double(); });
  add_zero_suite(out, "G zero threshold at kappa (example 2)", kap.value.to_double(),
                 [&](double l) { return exponent_G(ex2, space43, l).value.to_double(); });
  const double g0_direct = gjs(Distribution::bernoulli(0.5), Distribution::bernoulli(0.9), unit);
  add_tolerance_check(out, "G0 of (Bern(.1),Bern(.5)) vs Bern(.9)", g0, g0_direct, 1e-15);

  // Fixed-length exponent never exceeds the sequential one.
  const SourceModel two_one(ProblemDims(2, 1), bern({0.2, 0.8}), bern({0.2}), MatchingSet({{0, 0}}), unit);
  for (const auto& [label, model, space] :
       {std::tuple{"(2,1) model", &two_one, &space21}, std::tuple{"example 1", &ex1, &space43},
        std::tuple{"example 2", &ex2, &space43}}) {
    const auto es = exponent_E_s(*model, *space).value;
    const auto ef = exponent_E_f(*model, *space).value;
    out.push_back({std::string("E_f <= E_s, ") + label, "E_f <= " + fmt(es.to_double()), fmt(ef.to_double()),
                   ef <= es + ExtendedReal(1e-9)});
  }

  // Variational form of the Renyi divergence on a 2001-point grid.
  {
    Draws d(1);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const auto p = Distribution::bernoulli(d.next(0.05, 0.95));
      const auto q = Distribution::bernoulli(d.next(0.05, 0.95));
      for (double a : {0.5, 1.0, 2.0}) {
        double best = std::numeric_limits<double>::infinity();
        for (int g = 0; g <= 2000; ++g) {
          const auto v = Distribution::bernoulli(g / 2000.0);
          best = std::min(best, a * kl(v, p).value() + kl(v, q).value());
        }
        worst = std::max(worst, std::abs(best - renyi(p, q, a / (1.0 + a)).value()));
      }
    }
    out.push_back({"variational Renyi identity (30 cases)", "max err <= 1e-4", fmt(worst, 3), worst <= 1e-4});
  }

  // Min over hypotheses equals min over index pairs.
  {
    Draws d(2);
    double worst = 0.0;
    int cases = 0;
    for (std::size_t m2 = 1; m2 <= 3; ++m2) {
      for (std::size_t m1 = m2; m1 <= 4; ++m1) {
        const ProblemDims dims(m1, m2);
        const HypothesisSpace space(dims);
        for (int trial = 0; trial < 5; ++trial, ++cases) {
          std::vector<Distribution> left;
          std::vector<Distribution> right;
          for (std::size_t i = 0; i < m1; ++i) left.push_back(Distribution::bernoulli(d.next(0.02, 0.98)));
          for (std::size_t j = 0; j < m2; ++j) right.push_back(Distribution::bernoulli(d.next(0.02, 0.98)));
          const SourceModel model(dims, left, right, std::nullopt, unit);
          double by_hypothesis = std::numeric_limits<double>::infinity();
          for (const auto& h : space.all()) {
            by_hypothesis = std::min(by_hypothesis, g_combined(model.left(), model.right(), h.set, unit));
          }
          worst = std::max(worst, std::abs(by_hypothesis - quantity_G0(model).value.to_double()));
        }
      }
    }
    out.push_back({"hypothesis min = pair min (" + std::to_string(cases) + " models)", "max err <= 1e-12",
                   fmt(worst, 3), worst <= 1e-12});
  }

  // Skew symmetry of the Renyi form behind E_s.
  {
    Draws d(3);
    double worst = 0.0;
    for (const auto& [a, b] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.5}}) {
      for (int trial = 0; trial < 10; ++trial) {
        const auto p = Distribution::bernoulli(d.next(0.05, 0.95));
        const auto q = Distribution::bernoulli(d.next(0.05, 0.95));
        worst = std::max(worst, std::abs(a * renyi(q, p, b / (a + b)).value() - b * renyi(p, q, a / (a + b)).value()));
      }
    }
    out.push_back({"Renyi skew symmetry (20 cases)", "max err <= 1e-10", fmt(worst, 3), worst <= 1e-10});
  }

  // GJS basics.
  {
    Draws d(4);
    double worst = 0.0;
    bool zero_ok = true;
    for (int trial = 0; trial < 10; ++trial) {
      const auto p = Distribution::bernoulli(d.next(0.05, 0.95));
      const auto q = Distribution::bernoulli(d.next(0.05, 0.95));
      const auto m = mixture(p, q, unit);
      const double js = 0.5 * kl(p, m).value() + 0.5 * kl(q, m).value();
      worst = std::max(worst, std::abs(gjs(p, q, unit) - 2.0 * js));
      zero_ok = zero_ok && gjs(p, p, unit) == 0.0 && gjs(p, q, unit) > 0.0;
    }
    out.push_back({"GJS(1,1) = 2 JS (10 cases)", "max err <= 1e-12", fmt(worst, 3), worst <= 1e-12});
    out.push_back({"GJS zero iff equal", "true", zero_ok ? "true" : "false", zero_ok});
  }

  // E_s with a single right sequence.
  {
    const Rates r(2.0, 0.5);
    const SourceModel model(ProblemDims(3, 1), bern({0.2, 0.5, 0.8}), bern({0.5}), MatchingSet({{1, 0}}), r);
    const HypothesisSpace space(model.dims());
    const double es = exponent_E_s(model, space).value.to_double();
    double form1 = std::numeric_limits<double>::infinity();
    double form2 = std::numeric_limits<double>::infinity();
    for (std::size_t t : {0, 2}) {
      form1 = std::min(form1, 2.0 * renyi(model.right()[0], model.left()[t], 0.5 / 2.5).value());
      form2 = std::min(form2, 0.5 * renyi(model.left()[t], model.right()[0], 2.0 / 2.5).value());
    }
    const bool pass = std::abs(es - form1) <= 1e-12 && std::abs(es - form2) <= 1e-10;
    out.push_back({"E_s single right sequence, both forms", fmt(form1) + " / " + fmt(form2), fmt(es), pass});
  }

  // E_s limits in the rates.
  {
    auto es_at = [](double a, double b) {
      const SourceModel model(ProblemDims(2, 1), bern({0.2, 0.8}), bern({0.2}), MatchingSet({{0, 0}}), Rates(a, b));
      return exponent_E_s(model, HypothesisSpace(model.dims())).value.to_double();
    };
    const double small = es_at(1e-6, 1.0);
    out.push_back({"E_s -> 0 as alpha -> 0", "< 1e-5", fmt(small, 3), small < 1e-5});
    const double limit = kl(Distribution::bernoulli(0.2), Distribution::bernoulli(0.8)).value();
    add_tolerance_check(out, "E_s -> alpha D(Q||P) as beta -> inf", es_at(1.0, 1e6), limit, 1e-3);
  }
  return out;
}

}  // namespace seqmatch::cli
