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

#include "seqmatch/divergence.hpp"

#include <algorithm>
#include <cmath>

#include "seqmatch/errors.hpp"

namespace seqmatch {
namespace {

void require_same_alphabet(const Distribution& p, const Distribution& q) {
  if (p.alphabet_size() != q.alphabet_size()) {
    throw DimensionError("divergence between distributions on different alphabets");
  }
}

}  // namespace

ExtendedReal kl(const Distribution& p, const Distribution& q) {
  require_same_alphabet(p, q);
  double sum = 0.0;
  for (std::size_t x = 0; x < p.alphabet_size(); ++x) {
    if (p[x] == 0.0) continue;
    if (q[x] == 0.0) return ExtendedReal::infinity();
    sum += p[x] * std::log(p[x] / q[x]);
  }
  // Rounding can leave a tiny negative residue for p ~ q.
  return ExtendedReal(std::max(sum, 0.0));
}

ExtendedReal renyi(const Distribution& p, const Distribution& q, double order) {
  require_same_alphabet(p, q);
  if (!(order > 0.0) || !std::isfinite(order)) throw DomainError("renyi: order must be finite and > 0");
  if (order == 1.0) return kl(p, q);

  double power_sum = 0.0;
  for (std::size_t x = 0; x < p.alphabet_size(); ++x) {
    if (p[x] == 0.0) continue;
    if (q[x] == 0.0) {
      // q^(1-order) is +inf for order > 1 and 0 for order < 1.
      if (order > 1.0) return ExtendedReal::infinity();
      continue;
    }
    power_sum += std::pow(p[x], order) * std::pow(q[x], 1.0 - order);
  }
  if (power_sum == 0.0) return ExtendedReal::infinity();  // disjoint supports, order < 1
  const double value = std::log(power_sum) / (order - 1.0);
  return ExtendedReal(std::max(value, 0.0));
}

double binary_kl(double p, double q) {
  if (!(p > 0.0 && p < 1.0) || !(q > 0.0 && q < 1.0)) {
    throw DomainError("binary_kl: arguments must lie strictly inside (0,1)");
  }
  return p * std::log(p / q) + (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
}

Distribution mixture(const Distribution& p, const Distribution& q, const Rates& rates) {
  require_same_alphabet(p, q);
  if (p == q) return p;
  const double a = rates.alpha();
  const double b = rates.beta();
  std::vector<double> r(p.alphabet_size());
  for (std::size_t x = 0; x < r.size(); ++x) r[x] = (a * p[x] + b * q[x]) / (a + b);
  return Distribution(std::move(r));
}

double gjs(const Distribution& p, const Distribution& q, const Rates& rates) {
  require_same_alphabet(p, q);
  if (p == q) return 0.0;
  return detail::gjs(p.probs(), q.probs(), rates.alpha(), rates.beta());
}

std::pair<double, double> decompose_identity_check(const Distribution& omega, const Distribution& psi,
                                                    const Distribution& p, const Rates& rates) {
  require_same_alphabet(omega, p);
  require_same_alphabet(psi, p);
  if (!p.has_full_support()) throw DomainError("decompose_identity_check: p must have full support");
  const double a = rates.alpha();
  const double b = rates.beta();
  const double lhs = a * kl(omega, p).value() + b * kl(psi, p).value();
  const double rhs = gjs(omega, psi, rates) + (a + b) * kl(mixture(omega, psi, rates), p).value();
  return {lhs, rhs};
}

namespace detail {

double kl_finite(std::span<const double> p, std::span<const double> q) {
  double sum = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] > 0.0) sum += p[x] * std::log(p[x] / q[x]);
  }
  return std::max(sum, 0.0);
}

double gjs(std::span<const double> p, std::span<const double> q, double alpha, double beta) {
  const double total = alpha + beta;
  double sum = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0 && q[x] == 0.0) continue;
    const double r = (alpha * p[x] + beta * q[x]) / total;
    if (p[x] > 0.0) sum += alpha * p[x] * std::log(p[x] / r);
    if (q[x] > 0.0) sum += beta * q[x] * std::log(q[x] / r);
  }
  return std::max(sum, 0.0);
}

}  // namespace detail

}  // namespace seqmatch
