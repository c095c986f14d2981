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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace seqmatch {

/// Operands have incompatible shapes (alphabet sizes, database sizes, indices).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A source model violates the membership rules of its declared hypothesis.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configuration file or command line could not be turned into a valid experiment.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sequential test hit its max_steps safety valve before the stopping rule fired.
/// This is not a statistical outcome; callers report it separately.
class TruncatedRunError : public std::runtime_error {
 public:
  explicit TruncatedRunError(std::uint64_t last_n)
      : std::runtime_error("sequential test truncated at n=" + std::to_string(last_n)),
        last_n_(last_n) {}

  std::uint64_t last_n() const noexcept { return last_n_; }

 private:
  std::uint64_t last_n_;
};

}  // namespace seqmatch
