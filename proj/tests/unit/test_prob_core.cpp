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


#include <cmath>
#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "seqmatch/distribution.hpp"
#include "seqmatch/divergence.hpp"
#include "seqmatch/errors.hpp"

namespace seqmatch {
namespace {

Distribution bern(double p) { return Distribution::bernoulli(p); }

// Two-term binary sums, written out independently of the library loops.
double kl2(double p, double q) { return p * std::log(p / q) + (1 - p) * std::log((1 - p) / (1 - q)); }

double renyi2(double p, double q, double a) {
  return std::log(std::pow(p, a) * std::pow(q, 1 - a) + std::pow(1 - p, a) * std::pow(1 - q, 1 - a)) / (a - 1);
}

TEST(Distribution, RejectsInvalidWeights) {
  EXPECT_THROW(Distribution({1.0}), DomainError);
  EXPECT_THROW(Distribution({0.5, 0.6}), DomainError);
  EXPECT_THROW(Distribution({-0.1, 1.1}), DomainError);
  EXPECT_THROW(Distribution({NAN, 1.0}), DomainError);
  EXPECT_THROW(Distribution::bernoulli(1.5), DomainError);
}

TEST(Distribution, RenormalizesSmallDrift) {
  const Distribution d({0.3 + 5e-10, 0.7});
  EXPECT_NEAR(d[0] + d[1], 1.0, 1e-15);
  const Distribution exact({0.25, 0.75});
  EXPECT_EQ(exact[0], 0.25);
}

TEST(Distribution, JsonRoundTripIsExact) {
  for (double p : {0.1, 0.12, 0.3, 1.0 / 3.0, 0.999}) {
    const Distribution d = distribution_from_json(nlohmann::json("bern:" + std::to_string(p)));
    const Distribution back = distribution_from_json(nlohmann::json(d));
    EXPECT_EQ(d, back);
  }
  EXPECT_THROW(distribution_from_json(nlohmann::json("binom:0.2")), ConfigError);
  EXPECT_THROW(distribution_from_json(nlohmann::json("bern:0.2x")), ConfigError);
  EXPECT_THROW(distribution_from_json(nlohmann::json(3)), ConfigError);
}

TEST(Distribution, BernShorthandPutsSuccessAtIndexOne) {
  const Distribution d = distribution_from_json(nlohmann::json("bern:0.2"));
  EXPECT_DOUBLE_EQ(d[1], 0.2);
  EXPECT_DOUBLE_EQ(d[0], 0.8);
}

TEST(EmpiricalType, PushUpdatesOneCount) {
  EmpiricalType t(3);
  const std::vector<std::size_t> stream = {0, 2, 2, 1, 2, 0};
  for (std::size_t n = 0; n < stream.size(); ++n) {
    const EmpiricalType before = t;
    t.push(stream[n]);
    EXPECT_EQ(t.length(), before.length() + 1);
    int changed = 0;
    for (std::size_t s = 0; s < 3; ++s) changed += t.count(s) != before.count(s);
    EXPECT_EQ(changed, 1);
  }
  const Distribution d = t.as_distribution();
  EXPECT_DOUBLE_EQ(d[2], 0.5);
  EXPECT_THROW(t.push(3), DimensionError);
}

TEST(EmpiricalType, SameTypeIsScaleFree) {
  EXPECT_TRUE(EmpiricalType({1, 3}).same_type_as(EmpiricalType({2, 6})));
  EXPECT_FALSE(EmpiricalType({1, 3}).same_type_as(EmpiricalType({2, 5})));
}

TEST(Rates, LengthsAreCeilings) {
  const Rates r(0.5, 0.7);
  EXPECT_EQ(r.xi(1), 1u);
  EXPECT_EQ(r.xi(2), 1u);
  EXPECT_EQ(r.xi(3), 2u);
  EXPECT_EQ(r.chi(10), 7u);
  EXPECT_EQ(r.chi(3), 3u);
  EXPECT_THROW(Rates(0.0, 1.0), DomainError);
  EXPECT_THROW(Rates(1.0, -2.0), DomainError);
}

TEST(Kl, MatchesDirectSum) {
  EXPECT_EQ(kl(bern(0.4), bern(0.4)).value(), 0.0);
  EXPECT_FALSE(kl(bern(1.0), bern(0.0)).is_finite());
  EXPECT_NEAR(kl(bern(0.3), bern(0.5)).value(), kl2(0.3, 0.5), 1e-12);
  EXPECT_THROW(kl(bern(0.3), Distribution::uniform(3)), DimensionError);
}

TEST(Renyi, MatchesDirectPowerSum) {
  EXPECT_EQ(renyi(bern(0.3), bern(0.3), 0.5).value(), 0.0);
  EXPECT_NEAR(renyi(bern(0.1), bern(0.9), 0.5).value(), renyi2(0.1, 0.9, 0.5), 1e-12);
  EXPECT_NEAR(renyi(bern(0.2), bern(0.6), 2.5).value(), renyi2(0.2, 0.6, 2.5), 1e-12);
  EXPECT_THROW(renyi(bern(0.1), bern(0.2), 0.0), DomainError);
  EXPECT_THROW(renyi(bern(0.1), bern(0.2), -1.0), DomainError);
}

TEST(Renyi, ContinuousAtOrderOne) {
  const auto p = bern(0.23);
  const auto q = bern(0.71);
  const double at_one = renyi(p, q, 1.0).value();
  EXPECT_EQ(at_one, kl(p, q).value());
  EXPECT_NEAR(renyi(p, q, 1.0 - 1e-7).value(), at_one, 1e-6);
  EXPECT_NEAR(renyi(p, q, 1.0 + 1e-7).value(), at_one, 1e-6);
}

TEST(Renyi, SupportConventions) {
  EXPECT_FALSE(renyi(bern(0.5), bern(0.0), 2.0).is_finite());
  EXPECT_TRUE(renyi(bern(0.5), bern(0.0), 0.5).is_finite());
  EXPECT_FALSE(renyi(bern(1.0), bern(0.0), 0.5).is_finite());
}

TEST(Renyi, SkewSymmetry) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  for (const auto& [a, b] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.5}}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto p = bern(u(rng));
      const auto q = bern(u(rng));
      EXPECT_NEAR(a * renyi(q, p, b / (a + b)).value(), b * renyi(p, q, a / (a + b)).value(), 1e-10);
    }
  }
}

TEST(Renyi, BelowKlForOrdersUnderOne) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = bern(u(rng));
    const auto q = bern(u(rng));
    double prev = 0.0;
    for (double order : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double r = renyi(p, q, order).value();
      EXPECT_GE(r, prev - 1e-14);
      EXPECT_LE(r, kl(p, q).value() + 1e-14);
      prev = r;
    }
  }
}

TEST(Renyi, VariationalForm) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int trial = 0; trial < 10; ++trial) {
    const double p = u(rng);
    const double q = u(rng);
    for (double a : {0.5, 1.0, 2.0}) {
      double best = INFINITY;
      for (int g = 1; g < 2000; ++g) {
        const double v = g / 2000.0;
        best = std::min(best, a * kl2(v, p) + kl2(v, q));
      }
      EXPECT_NEAR(best, renyi(bern(p), bern(q), a / (1 + a)).value(), 1e-4);
    }
  }
}

TEST(BinaryKl, ValuesAndDerivative) {
  EXPECT_EQ(binary_kl(0.5, 0.5), 0.0);
  EXPECT_NEAR(binary_kl(0.3, 0.7), binary_kl(0.7, 0.3), 1e-12);
  const double h = 1e-6;
  const double fd = (binary_kl(0.3, 0.5 + h) - binary_kl(0.3, 0.5 - h)) / (2 * h);
  EXPECT_GT(fd, 0.0);
  EXPECT_NEAR(fd, (0.5 - 0.3) / (0.5 * 0.5), 1e-6);
  EXPECT_THROW(binary_kl(0.0, 0.5), DomainError);
  EXPECT_THROW(binary_kl(0.5, 1.0), DomainError);
}

TEST(Mixture, WeightedAverage) {
  EXPECT_EQ(mixture(bern(0.3), bern(0.3), Rates(2, 1)), bern(0.3));
  EXPECT_NEAR(mixture(bern(0.0), bern(1.0), Rates(1, 1))[1], 0.5, 1e-15);
  EXPECT_NEAR(mixture(bern(0.1), bern(0.4), Rates(2, 1))[1], 0.2, 1e-15);
}

TEST(Gjs, BasicProperties) {
  const Rates unit(1, 1);
  EXPECT_EQ(gjs(bern(0.37), bern(0.37), unit), 0.0);
  const double small = gjs(bern(0.1), bern(0.12), unit);
  EXPECT_GT(small, 0.0);
  EXPECT_LT(small, 0.0015);
  EXPECT_TRUE(std::isfinite(gjs(bern(0.0), bern(1.0), unit)));

  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int trial = 0; trial < 50; ++trial) {
    const double p = u(rng);
    const double q = u(rng);
    const double m = 0.5 * (p + q);
    const double js = 0.5 * kl2(p, m) + 0.5 * kl2(q, m);
    EXPECT_NEAR(gjs(bern(p), bern(q), unit), 2 * js, 1e-12);
    const Rates r(2.0, 0.5);
    const double rm = (2.0 * p + 0.5 * q) / 2.5;
    EXPECT_NEAR(gjs(bern(p), bern(q), r), 2.0 * kl2(p, rm) + 0.5 * kl2(q, rm), 1e-12);
  }
}

TEST(Gjs, DecompositionIdentity) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  auto random_dist = [&](std::size_t n) {
    std::vector<double> w(n);
    double s = 0;
    for (auto& x : w) s += (x = u(rng));
    for (auto& x : w) x /= s;
    return Distribution(w);
  };
  const auto p0 = random_dist(2);
  const auto [z1, z2] = decompose_identity_check(p0, p0, p0, Rates(1, 1));
  EXPECT_NEAR(z1, 0.0, 1e-15);
  EXPECT_NEAR(z2, 0.0, 1e-15);
  for (int trial = 0; trial < 20; ++trial) {
    const auto [l2, r2] = decompose_identity_check(random_dist(2), random_dist(2), random_dist(2), Rates(1, 1));
    EXPECT_NEAR(l2, r2, 1e-10);
    const auto [l3, r3] = decompose_identity_check(random_dist(3), random_dist(3), random_dist(3), Rates(2, 0.5));
    EXPECT_NEAR(l3, r3, 1e-10);
  }
}

}  // namespace
}  // namespace seqmatch
