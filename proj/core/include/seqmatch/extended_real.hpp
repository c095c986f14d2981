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

#include <compare>
#include <limits>
#include <ostream>

#include "seqmatch/errors.hpp"

namespace seqmatch {

/// A non-NaN real extended with a tagged +infinity.
///
/// Divergences with disjoint support and minima over empty sets are reported
/// as ExtendedReal::infinity() rather than as a large float, so optimizers
/// and report writers can branch on is_finite() explicitly.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr ExtendedReal infinity() {
    ExtendedReal r;
    r.infinite_ = true;
    return r;
  }

  constexpr bool is_finite() const { return !infinite_; }

  /// Finite value; throws DomainError when infinite.
  double value() const {
    if (infinite_) throw DomainError("ExtendedReal: value() on +infinity");
    return value_;
  }

  /// IEEE view, +inf for the infinite tag. Intended for printing and comparisons with doubles.
  constexpr double to_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend constexpr std::partial_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.infinite_ && b.infinite_) return std::partial_ordering::equivalent;
    if (a.infinite_) return std::partial_ordering::greater;
    if (b.infinite_) return std::partial_ordering::less;
    return a.value_ <=> b.value_;
  }

  friend constexpr ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtendedReal(a.value_ + b.value_);
  }

  /// Scaling by a non-negative factor; 0 * inf is taken as 0.
  friend ExtendedReal operator*(double s, const ExtendedReal& a) {
    if (s < 0) throw DomainError("ExtendedReal: negative scale");
    if (a.infinite_) return s == 0.0 ? ExtendedReal(0.0) : infinity();
    return ExtendedReal(s * a.value_);
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtendedReal& a) {
    if (a.infinite_) return os << "inf";
    return os << a.value_;
  }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

}  // namespace seqmatch
