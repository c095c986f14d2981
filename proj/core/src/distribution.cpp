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

#include "seqmatch/distribution.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include <nlohmann/json.hpp>

#include "seqmatch/errors.hpp"

namespace seqmatch {

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.size() < 2) throw DomainError("Distribution: alphabet size must be >= 2");
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) throw DomainError("Distribution: weights must be finite and >= 0");
  }
  const double sum = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (std::abs(sum - 1.0) > kNormalizeTolerance) {
    throw DomainError("Distribution: weights sum to " + std::to_string(sum) + ", expected 1");
  }
  if (std::abs(sum - 1.0) > kExactTolerance) {
    for (double& p : probs_) p /= sum;
  }
}

Distribution Distribution::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("bernoulli: p must lie in [0,1]");
  return Distribution({1.0 - p, p});
}

Distribution Distribution::uniform(std::size_t alphabet_size) {
  if (alphabet_size < 2) throw DomainError("uniform: alphabet size must be >= 2");
  return Distribution(std::vector<double>(alphabet_size, 1.0 / static_cast<double>(alphabet_size)));
}

bool Distribution::has_full_support() const {
  for (double p : probs_) {
    if (p <= 0.0) return false;
  }
  return true;
}

Distribution Distribution::smoothed(double eps) const {
  if (has_full_support()) return *this;
  const double u = 1.0 / static_cast<double>(probs_.size());
  std::vector<double> out(probs_.size());
  for (std::size_t a = 0; a < probs_.size(); ++a) out[a] = (1.0 - eps) * probs_[a] + eps * u;
  return Distribution(std::move(out));
}

EmpiricalType::EmpiricalType(std::size_t alphabet_size) : counts_(alphabet_size, 0) {
  if (alphabet_size < 2) throw DomainError("EmpiricalType: alphabet size must be >= 2");
}

EmpiricalType::EmpiricalType(std::vector<std::uint64_t> counts) : counts_(std::move(counts)) {
  if (counts_.size() < 2) throw DomainError("EmpiricalType: alphabet size must be >= 2");
  length_ = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

void EmpiricalType::push(std::size_t symbol) {
  if (symbol >= counts_.size()) throw DimensionError("EmpiricalType::push: symbol out of alphabet");
  ++counts_[symbol];
  ++length_;
}

Distribution EmpiricalType::as_distribution() const {
  if (length_ == 0) throw DomainError("EmpiricalType: empty sample has no distribution");
  std::vector<double> p(counts_.size());
  const double n = static_cast<double>(length_);
  for (std::size_t a = 0; a < counts_.size(); ++a) p[a] = static_cast<double>(counts_[a]) / n;
  return Distribution(std::move(p));
}

bool EmpiricalType::same_type_as(const EmpiricalType& other) const {
  if (other.counts_.size() != counts_.size()) throw DimensionError("EmpiricalType: alphabet mismatch");
  for (std::size_t a = 0; a < counts_.size(); ++a) {
    // Lengths stay far below 2^32 in practice, so the products cannot overflow.
    if (counts_[a] * other.length_ != other.counts_[a] * length_) return false;
  }
  return true;
}

Rates::Rates(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0) || !std::isfinite(alpha) || !(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("Rates: alpha and beta must be finite and > 0");
  }
}

std::uint64_t scaled_length(double rate, std::uint64_t n) {
  const double x = rate * static_cast<double>(n);
  return static_cast<std::uint64_t>(std::ceil(x - 1e-12 * x));
}

std::uint64_t Rates::xi(std::uint64_t n) const { return scaled_length(alpha_, n); }
std::uint64_t Rates::chi(std::uint64_t n) const { return scaled_length(beta_, n); }

void to_json(nlohmann::json& j, const Distribution& d) {
  j = nlohmann::json::array();
  for (double p : d.probs()) j.push_back(p);
}

Distribution distribution_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    constexpr std::string_view prefix = "bern:";
    if (s.rfind(prefix, 0) != 0) throw ConfigError("distribution string must look like \"bern:<p>\", got " + s);
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(s.substr(prefix.size()), &used);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse Bernoulli parameter in " + s);
    }
    if (used != s.size() - prefix.size()) throw ConfigError("trailing characters in " + s);
    return Distribution::bernoulli(p);
  }
  if (j.is_array()) {
    std::vector<double> p;
    for (const auto& v : j) {
      if (!v.is_number()) throw ConfigError("distribution arrays must contain numbers");
      p.push_back(v.get<double>());
    }
    return Distribution(std::move(p));
  }
  throw ConfigError("distribution must be an array of probabilities or \"bern:<p>\"");
}

}  // namespace seqmatch
