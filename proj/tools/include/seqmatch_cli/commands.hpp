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
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "seqmatch/model.hpp"

namespace seqmatch::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitConfigError = 2,
  kExitTruncated = 3,
};

struct EnumerateOptions {
  std::size_t m1 = 0;
  std::size_t m2 = 0;
  std::optional<std::size_t> k;
  bool json = false;
};

/// Hypothesis table: one row per matching with its index, pairs and the matched index sets.
int cmd_enumerate(const EnumerateOptions& options, std::ostream& out, std::ostream& err);

/// Every name accepted by the exponent command.
const std::vector<std::string>& exponent_names();

/// Evaluates the named quantities on a model. Empty `which` selects every quantity that
/// applies to the model; lambda-dependent ones need `lambda`. Throws ModelError / ConfigError.
nlohmann::json evaluate_exponents(const SourceModel& model, const std::vector<std::string>& which,
                                  std::optional<double> lambda);

struct ExponentOptions {
  std::string config_path;
  std::vector<std::string> which;
  std::optional<double> lambda;
  std::string output_path;
};

int cmd_exponent(const ExponentOptions& options, std::ostream& out, std::ostream& err);

struct SimulateOptions {
  std::string config_path;
  std::optional<unsigned> parallelism;
  std::optional<std::string> json_path;
  std::optional<std::string> csv_path;
  bool theory = true;
  bool quiet = false;
};

/// Runs the campaign of a config file and writes the JSON and CSV reports. Nothing is left
/// on disk when the run fails. Exit code 3 when any trial hit the step limit.
int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err);

struct PaperCheck {
  std::string name;
  std::string expected;
  std::string computed;
  bool pass = false;
};

/// The built-in reference checks. `perturb` shifts the matched pair (2,2) of the first
/// worked example, which must make its Lambda check fail.
std::vector<PaperCheck> run_paper_checks(bool perturb);

int cmd_verify_paper(bool perturb, std::ostream& out, std::ostream& err);

}  // namespace seqmatch::cli
