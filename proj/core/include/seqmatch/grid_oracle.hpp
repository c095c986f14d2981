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

#include "seqmatch/exponents.hpp"
#include "seqmatch/model.hpp"

namespace seqmatch {

struct GridOptions {
  /// Points per binary simplex factor, endpoints included. The data point is added on top.
  std::size_t points = 401;
  /// Budget resolution when a sum constraint is split across pairs.
  std::size_t budget_bins = 2000;
  double smoothing = 1e-9;
};

/// Brute-force minimization of the constrained exponent for binary alphabets.
///
/// Distributions outside every constraint stay at their data value. With at most
/// three free distributions the full product grid is scanned; otherwise a single
/// additive constraint is split over its pairs by min-plus convolution of per-pair
/// value functions. Anything else throws DomainError.
ExponentResult grid_oracle(const SourceModel& model, std::span<const PairSumConstraint> constraints,
                           const GridOptions& options = {});

}  // namespace seqmatch
