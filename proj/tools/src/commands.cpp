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


#include "seqmatch_cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "seqmatch/errors.hpp"
#include "seqmatch/exponents.hpp"
#include "seqmatch/matching.hpp"
#include "seqmatch/simulator.hpp"
#include "seqmatch_cli/config.hpp"

namespace seqmatch::cli {
namespace {

std::string index_set(const std::vector<std::size_t>& idx) {
  std::string s = "{";
  for (std::size_t n = 0; n < idx.size(); ++n) {
    if (n > 0) s += ",";
    s += std::to_string(idx[n] + 1);
  }
  return s + "}";
}

std::string pair_list(const MatchingSet& m) {
  std::string s;
  for (const auto& [i, j] : m.pairs()) {
    if (!s.empty()) s += " ";
    s += "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
  }
  return s;
}

bool needs_lambda(const std::string& name) { return name == "E_r" || name == "F" || name == "G"; }

// Writes to `path.partial`; the caller renames on success.
std::string write_partial(const std::string& path, const std::string& body) {
  const std::string tmp = path + ".partial";
  std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
  out << body;
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + tmp + "'");
  return tmp;
}

void print_summary(const SimulationReport& rep, std::ostream& out) {
  out << "test " << test_kind_name(rep.test.kind) << ", " << rep.campaign.trials << " trials per N, config "
      << rep.config_hash << "\n";
  out << std::left << std::setw(7) << "N" << std::setw(30) << "error rate [95% CI]" << std::setw(10) << "mismatch"
      << std::setw(10) << "f.reject" << std::setw(10) << "f.alarm" << std::setw(22) << "mean tau (se)"
      << std::setw(10) << "P(N-1)"
      << "trunc\n";
  for (const auto& r : rep.rows) {
    std::ostringstream ci;
    ci << std::setprecision(4) << r.error.rate << " [" << r.error.lo << ", " << r.error.hi << "]";
    std::ostringstream tau;
    tau << std::fixed << std::setprecision(2) << r.mean_tau << " (" << r.se_tau << ")" << (r.tau_flag ? " !" : "");
    out << std::left << std::setw(7) << r.horizon << std::setw(30) << ci.str() << std::setw(10) << r.mismatch.count
        << std::setw(10) << r.false_reject.count << std::setw(10) << r.false_alarm.count << std::setw(22)
        << tau.str() << std::setw(10) << std::setprecision(3) << r.p_tau_start << r.truncated << "\n";
  }
  out << "slope -ln(rate)/N at largest N: ";
  if (rep.slope.largest_n) {
    out << rep.slope.largest_n->estimate << (rep.slope.largest_n->censored ? " (censored)" : "");
  } else {
    out << "n/a";
  }
  out << ", monotone " << (rep.slope.monotone ? "yes" : "no") << "\n";
}

}  // namespace

int cmd_enumerate(const EnumerateOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const ProblemDims dims(options.m1, options.m2);
    std::vector<std::size_t> ks;
    if (options.k) {
      if (*options.k < 1 || *options.k > dims.m2) {
        err << "error: --k must lie in [1, " << dims.m2 << "]\n";
        return kExitConfigError;
      }
      ks.push_back(*options.k);
    } else {
      for (std::size_t k = 1; k <= dims.m2; ++k) ks.push_back(k);
    }
    std::uint64_t total = 0;
    for (auto k : ks) total += count_hypotheses(dims, k);
    if (total > kMaxHypotheses) {
      err << "error: " << total << " hypotheses exceed the limit of " << kMaxHypotheses << "\n";
      return kExitConfigError;
    }

    nlohmann::json rows = nlohmann::json::array();
    if (!options.json) {
      out << "m1=" << dims.m1 << " m2=" << dims.m2 << " hypotheses=" << total << "\n";
      out << std::left << std::setw(4) << "k" << std::setw(8) << "l" << std::setw(32) << "pairs" << std::setw(16)
          << "C" << "D\n";
    }
    for (auto k : ks) {
      const auto sets = enumerate_matchings(dims, k);
      for (std::size_t l = 0; l < sets.size(); ++l) {
        const auto& m = sets[l];
        if (options.json) {
          rows.push_back({{"k", k}, {"l", l + 1}, {"pairs", m}});
        } else {
          out << std::left << std::setw(4) << k << std::setw(8) << l + 1 << std::setw(32) << pair_list(m)
              << std::setw(16) << index_set(m.matched_left()) << index_set(m.matched_right()) << "\n";
        }
      }
    }
    if (options.json) out << rows.dump(2) << "\n";
    return kExitOk;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitConfigError;
}

const std::vector<std::string>& exponent_names() {
  static const std::vector<std::string> names = {"E_s", "E_f",    "E_r",   "F",            "G",
                                                 "G0",  "Lambda", "kappa", "extend_by_one"};
  return names;
}

nlohmann::json evaluate_exponents(const SourceModel& model, const std::vector<std::string>& which,
                                  std::optional<double> lambda) {
  std::vector<std::string> names = which;
  if (names.empty()) {
    names = model.is_null() ? std::vector<std::string>{"G0", "E_r"}
                            : std::vector<std::string>{"E_s", "E_f", "Lambda", "kappa", "extend_by_one", "F", "G"};
    if (!lambda) std::erase_if(names, needs_lambda);
  }
  for (const auto& n : names) {
    if (std::find(exponent_names().begin(), exponent_names().end(), n) == exponent_names().end()) {
      throw ConfigError("unknown exponent name '" + n + "'");
    }
    if (needs_lambda(n) && !lambda) throw ConfigError(n + " needs a lambda value");
    const bool null_only = n == "E_r" || n == "G0";
    if (null_only && !model.is_null()) throw ModelError(n + " is defined for models without a true matching");
    if (!null_only && model.is_null()) throw ModelError(n + " needs a model with a true matching");
  }

  const HypothesisSpace space(model.dims());
  nlohmann::json results = nlohmann::json::object();
  for (const auto& n : names) {
    if (n == "E_s") results[n] = exponent_E_s(model, space);
    if (n == "E_f") results[n] = exponent_E_f(model, space);
    if (n == "E_r") results[n] = exponent_E_r(model, space, *lambda);
    if (n == "F") results[n] = exponent_F(model, space, *lambda);
    if (n == "G") results[n] = exponent_G(model, space, *lambda);
    if (n == "G0") results[n] = quantity_G0(model);
    if (n == "Lambda") results[n] = quantity_Lambda(model, space);
    if (n == "kappa") results[n] = quantity_kappa(model, space);
    if (n == "extend_by_one") results[n] = quantity_extend_by_one(model);
  }
  nlohmann::json j;
  j["model"] = model;
  if (lambda) j["lambda"] = *lambda;
  j["results"] = results;
  return j;
}

int cmd_exponent(const ExponentOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const ExperimentConfig config = load_config(options.config_path);
    const auto which = options.which.empty() ? config.exponents.which : options.which;
    const auto lambda = options.lambda ? options.lambda : config.exponents.lambda;
    if (lambda && !(*lambda >= 0.0)) throw ConfigError("lambda must be >= 0");
    const std::string body = evaluate_exponents(config.model, which, lambda).dump(2) + "\n";
    if (options.output_path.empty()) {
      out << body;
    } else {
      const std::string tmp = write_partial(options.output_path, body);
      std::filesystem::rename(tmp, options.output_path);
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    if (!options.output_path.empty()) std::filesystem::remove(options.output_path + ".partial");
    return kExitConfigError;
  }
}

int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err) {
  std::vector<std::string> cleanup;
  try {
    ExperimentConfig config = load_config(options.config_path);
    require_simulation_sections(config);
    CampaignSpec campaign = *config.campaign;
    campaign.parallelism = resolve_parallelism(campaign.parallelism, std::getenv("SEQMATCH_THREADS"),
                                               options.parallelism);
    const std::string json_path =
        options.json_path ? *options.json_path : (config.output.json.empty() ? "seqmatch_report.json" : config.output.json);
    const std::string csv_path =
        options.csv_path ? *options.csv_path : (config.output.csv.empty() ? "seqmatch_report.csv" : config.output.csv);

    const SimulationReport rep =
        run_campaign(config.model, *config.test, campaign, config_hash(config), options.theory);

    cleanup.push_back(json_path + ".partial");
    const std::string json_tmp = write_partial(json_path, report_to_json(rep).dump(2) + "\n");
    cleanup.push_back(csv_path + ".partial");
    const std::string csv_tmp = write_partial(csv_path, report_to_csv(rep));
    std::filesystem::rename(json_tmp, json_path);
    cleanup.push_back(json_path);
    std::filesystem::rename(csv_tmp, csv_path);
    cleanup.clear();

    if (!options.quiet) print_summary(rep, out);
    std::uint64_t truncated = 0;
    for (const auto& r : rep.rows) truncated += r.truncated;
    if (truncated > 0) {
      err << "warning: " << truncated << " trial(s) hit the step limit\n";
      return kExitTruncated;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    for (const auto& p : cleanup) {
      std::error_code ec;
      std::filesystem::remove(p, ec);
    }
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

int cmd_verify_paper(bool perturb, std::ostream& out, std::ostream& err) {
  std::vector<PaperCheck> checks;
  try {
    checks = run_paper_checks(perturb);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  std::size_t failed = 0;
  out << std::left << std::setw(44) << "check" << std::setw(30) << "expected" << std::setw(30) << "computed"
      << "status\n";
  for (const auto& c : checks) {
    out << std::left << std::setw(44) << c.name << std::setw(30) << c.expected << std::setw(30) << c.computed
        << (c.pass ? "PASS" : "FAIL") << "\n";
    if (!c.pass) ++failed;
  }
  out << checks.size() - failed << "/" << checks.size() << " checks passed\n";
  return failed == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace seqmatch::cli
