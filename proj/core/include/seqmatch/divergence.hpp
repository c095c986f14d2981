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

#include <span>
#include <utility>

#include "seqmatch/distribution.hpp"
#include "seqmatch/extended_real.hpp"

// Divergence functionals on a finite alphabet. All logarithms are natural.
// Conventions: 0*log(0/q) = 0, and p(x) > 0 with q(x) = 0 makes KL infinite.

namespace seqmatch {

/// D(p||q) = sum_x p(x) log(p(x)/q(x)).
ExtendedReal kl(const Distribution& p, const Distribution& q);

/// Renyi divergence of the given order (> 0). Order exactly 1 is KL.
ExtendedReal renyi(const Distribution& p, const Distribution& q, double order);

/// Binary KL d(p,q) for p, q strictly inside (0,1).
double binary_kl(double p, double q);

/// (alpha*p + beta*q) / (alpha + beta).
Distribution mixture(const Distribution& p, const Distribution& q, const Rates& rates);

/// Weighted two-sample divergence alpha*D(p||R) + beta*D(q||R), R = mixture(p, q).
/// Always finite, zero exactly when p == q.
double gjs(const Distribution& p, const Distribution& q, const Rates& rates);

/// Both sides of alpha*D(omega||p) + beta*D(psi||p) = GJS(omega,psi) + (alpha+beta)*D(R||p).
/// Test helper; p must have full support.
std::pair<double, double> decompose_identity_check(const Distribution& omega, const Distribution& psi,
                                                    const Distribution& p, const Rates& rates);

namespace detail {

// Raw-span kernels shared by the scoring loop and the exponent solver. Callers
// guarantee equal lengths.

/// D(p||q) assuming q(x) > 0 wherever p(x) > 0.
double kl_finite(std::span<const double> p, std::span<const double> q);

double gjs(std::span<const double> p, std::span<const double> q, double alpha, double beta);

}  // namespace detail

}  // namespace seqmatch
