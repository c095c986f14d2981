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


#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "seqmatch_cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace seqmatch::cli;

  CLI::App app{"Sequential and fixed-length sequence matching tests, exponents and simulation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "seqmatch 0.1.0");

  EnumerateOptions en;
  auto* enumerate = app.add_subcommand("enumerate", "List matching hypotheses in canonical order");
  enumerate->add_option("--m1", en.m1, "Left database size")->required();
  enumerate->add_option("--m2", en.m2, "Right database size")->required();
  enumerate->add_option("--k", en.k, "Only hypotheses with k matched pairs");
  enumerate->add_flag("--json", en.json, "Print JSON instead of a table");

  ExponentOptions ex;
  auto* exponent = app.add_subcommand("exponent", "Evaluate error exponents of a model");
  exponent->add_option("config", ex.config_path, "Config file with a model section")->required();
  exponent->add_option("--which", ex.which, "Quantities: E_s E_f E_r F G G0 Lambda kappa extend_by_one")
      ->delimiter(',');
  exponent->add_option("--lambda", ex.lambda, "Threshold for E_r, F and G");
  exponent->add_option("-o,--output", ex.output_path, "Write JSON here instead of stdout");

  SimulateOptions sim;
  bool no_theory = false;
  auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo campaign and write reports");
  simulate->add_option("config", sim.config_path, "Experiment config file")->required();
  simulate->add_option("--parallelism", sim.parallelism, "Worker threads (overrides SEQMATCH_THREADS)");
  simulate->add_option("--json", sim.json_path, "JSON report path");
  simulate->add_option("--csv", sim.csv_path, "CSV report path");
  simulate->add_flag("--no-theory", no_theory, "Skip the exponent computations in the report");
  simulate->add_flag("-q,--quiet", sim.quiet, "Do not print the summary table");

  bool perturb = false;
  auto* verify = app.add_subcommand("verify-paper", "Run the built-in reference checks");
  verify->add_flag("--perturb", perturb, "Shift one matched pair of the first example (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  if (*enumerate) return cmd_enumerate(en, std::cout, std::cerr);
  if (*exponent) return cmd_exponent(ex, std::cout, std::cerr);
  if (*simulate) {
    sim.theory = !no_theory;
    return cmd_simulate(sim, std::cout, std::cerr);
  }
  return cmd_verify_paper(perturb, std::cout, std::cerr);
}
