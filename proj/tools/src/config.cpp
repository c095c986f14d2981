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


#include "seqmatch_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "seqmatch/errors.hpp"

namespace seqmatch::cli {
namespace {

void reject_unknown_keys(const nlohmann::json& j, const std::string& where, std::set<std::string> allowed) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

const nlohmann::json& require(const nlohmann::json& j, const std::string& where, const char* key) {
  if (!j.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
  return j.at(key);
}

std::uint64_t get_unsigned(const nlohmann::json& v, const std::string& what) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  throw ConfigError(what + " must be a non-negative integer");
}

double get_real(const nlohmann::json& v, const std::string& what) {
  if (v.is_string() && v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
  if (!v.is_number()) throw ConfigError(what + " must be a number or \"inf\"");
  return v.get<double>();
}

nlohmann::json real_to_json(double x) {
  if (std::isinf(x)) return "inf";
  return x;
}

Thresholds thresholds_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("test.thresholds must be an object");
  reject_unknown_keys(j, "test.thresholds", {"lambda1", "lambda2", "lambda3"});
  try {
    const double l3 = get_real(require(j, "test.thresholds", "lambda3"), "lambda3");
    if (!j.contains("lambda1") && !j.contains("lambda2")) return Thresholds::from_lambda3(l3);
    const double l1 = get_real(require(j, "test.thresholds", "lambda1"), "lambda1");
    const double l2 = get_real(require(j, "test.thresholds", "lambda2"), "lambda2");
    return Thresholds(l1, l2, l3);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("test.thresholds: ") + e.what());
  }
}

std::pair<TestSpec, std::vector<std::uint64_t>> test_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("test must be an object");
  reject_unknown_keys(j, "test", {"kind", "horizons", "thresholds", "zhou_lambda", "max_steps"});
  TestSpec spec;
  const auto& kind = require(j, "test", "kind");
  if (!kind.is_string()) throw ConfigError("test.kind must be a string");
  spec.kind = test_kind_from_name(kind.get<std::string>());

  const auto& hz = require(j, "test", "horizons");
  if (!hz.is_array() || hz.empty()) throw ConfigError("test.horizons must be a non-empty array");
  std::vector<std::uint64_t> horizons;
  for (const auto& n : hz) {
    const auto v = get_unsigned(n, "test.horizons entries");
    if (v < 2) throw ConfigError("test.horizons entries must be >= 2");
    horizons.push_back(v);
  }
  if (!std::is_sorted(horizons.begin(), horizons.end()) ||
      std::adjacent_find(horizons.begin(), horizons.end()) != horizons.end()) {
    throw ConfigError("test.horizons must be strictly increasing");
  }

  if (spec.kind == TestKind::kFlZhou) {
    spec.zhou_lambda = get_real(require(j, "test", "zhou_lambda"), "test.zhou_lambda");
    if (!(spec.zhou_lambda >= 0.0) || !std::isfinite(spec.zhou_lambda)) {
      throw ConfigError("test.zhou_lambda must be finite and >= 0");
    }
  } else if (j.contains("zhou_lambda")) {
    throw ConfigError("test.zhou_lambda only applies to fl_zhou");
  }

  if (!is_known_k(spec.kind)) {
    spec.thresholds = thresholds_from_json(require(j, "test", "thresholds"));
  } else if (j.contains("thresholds")) {
    throw ConfigError("test.thresholds only applies to the unknown-k tests");
  }

  if (j.contains("max_steps")) {
    if (!is_sequential(spec.kind)) throw ConfigError("test.max_steps only applies to sequential tests");
    spec.max_steps = get_unsigned(j["max_steps"], "test.max_steps");
    if (*spec.max_steps == 0) throw ConfigError("test.max_steps must be >= 1");
  }
  return {spec, horizons};
}

CampaignSpec campaign_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("campaign must be an object");
  reject_unknown_keys(j, "campaign", {"trials", "master_seed", "parallelism"});
  CampaignSpec c;
  c.trials = get_unsigned(require(j, "campaign", "trials"), "campaign.trials");
  if (c.trials < 1) throw ConfigError("campaign.trials must be >= 1");
  c.master_seed = get_unsigned(require(j, "campaign", "master_seed"), "campaign.master_seed");
  if (j.contains("parallelism")) {
    const auto p = get_unsigned(j["parallelism"], "campaign.parallelism");
    if (p < 1 || p > 1024) throw ConfigError("campaign.parallelism must lie in [1, 1024]");
    c.parallelism = static_cast<unsigned>(p);
  }
  return c;
}

nlohmann::json test_to_json(const TestSpec& t, const std::vector<std::uint64_t>& horizons) {
  nlohmann::json j;
  j["kind"] = test_kind_name(t.kind);
  j["horizons"] = horizons;
  if (t.kind == TestKind::kFlZhou) j["zhou_lambda"] = t.zhou_lambda;
  if (t.thresholds) {
    j["thresholds"] = {{"lambda1", real_to_json(t.thresholds->lambda1())},
                       {"lambda2", real_to_json(t.thresholds->lambda2())},
                       {"lambda3", real_to_json(t.thresholds->lambda3())}};
  }
  if (t.max_steps) j["max_steps"] = *t.max_steps;
  return j;
}

}  // namespace

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.model == b.model && a.test == b.test && a.campaign == b.campaign && a.output == b.output &&
         a.exponents == b.exponents;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown_keys(j, "config", {"model", "test", "campaign", "output", "exponents"});
  ExperimentConfig c{model_from_json(require(j, "config", "model")), std::nullopt, std::nullopt, {}, {}};

  if (j.contains("test") != j.contains("campaign")) {
    throw ConfigError("config: 'test' and 'campaign' must be given together");
  }
  if (j.contains("test")) {
    auto [spec, horizons] = test_from_json(j["test"]);
    if (is_known_k(spec.kind) && c.model.is_null()) {
      throw ConfigError("test: " + std::string(test_kind_name(spec.kind)) + " needs a model with a true matching");
    }
    CampaignSpec campaign = campaign_from_json(j["campaign"]);
    campaign.horizons = std::move(horizons);
    c.test = spec;
    c.campaign = std::move(campaign);
  }

  if (j.contains("output")) {
    const auto& o = j["output"];
    if (!o.is_object()) throw ConfigError("output must be an object");
    reject_unknown_keys(o, "output", {"json", "csv"});
    for (const char* key : {"json", "csv"}) {
      if (!o.contains(key)) continue;
      if (!o[key].is_string() || o[key].get<std::string>().empty()) {
        throw ConfigError(std::string("output.") + key + " must be a non-empty string");
      }
    }
    c.output.json = o.value("json", "");
    c.output.csv = o.value("csv", "");
  }

  if (j.contains("exponents")) {
    const auto& e = j["exponents"];
    if (!e.is_object()) throw ConfigError("exponents must be an object");
    reject_unknown_keys(e, "exponents", {"which", "lambda"});
    if (e.contains("which")) {
      if (!e["which"].is_array()) throw ConfigError("exponents.which must be an array of names");
      for (const auto& w : e["which"]) {
        if (!w.is_string()) throw ConfigError("exponents.which must be an array of names");
        c.exponents.which.push_back(w.get<std::string>());
      }
    }
    if (e.contains("lambda")) {
      const double l = get_real(e["lambda"], "exponents.lambda");
      if (!(l >= 0.0)) throw ConfigError("exponents.lambda must be >= 0");
      c.exponents.lambda = l;
    }
  }
  return c;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["model"] = c.model;
  if (c.test && c.campaign) {
    j["test"] = test_to_json(*c.test, c.campaign->horizons);
    j["campaign"] = {{"trials", c.campaign->trials},
                     {"master_seed", c.campaign->master_seed},
                     {"parallelism", c.campaign->parallelism}};
  }
  if (!c.output.json.empty() || !c.output.csv.empty()) {
    nlohmann::json o = nlohmann::json::object();
    if (!c.output.json.empty()) o["json"] = c.output.json;
    if (!c.output.csv.empty()) o["csv"] = c.output.csv;
    j["output"] = o;
  }
  if (!c.exponents.which.empty() || c.exponents.lambda) {
    nlohmann::json e = nlohmann::json::object();
    if (!c.exponents.which.empty()) e["which"] = c.exponents.which;
    if (c.exponents.lambda) e["lambda"] = real_to_json(*c.exponents.lambda);
    j["exponents"] = e;
  }
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

void require_simulation_sections(const ExperimentConfig& config) {
  if (!config.test || !config.campaign) throw ConfigError("config has no 'test' / 'campaign' sections");
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const ExperimentConfig& config) {
  nlohmann::json j = config_to_json(config);
  j.erase("output");
  j.erase("exponents");
  if (j.contains("campaign")) j["campaign"].erase("parallelism");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(j.dump())));
  return buf;
}

unsigned resolve_parallelism(unsigned config_value, const char* env_value, std::optional<unsigned> flag) {
  unsigned p = config_value;
  if (env_value != nullptr && *env_value != '\0') {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(env_value, &used);
    } catch (const std::exception&) {
      throw ConfigError(std::string("SEQMATCH_THREADS must be a positive integer, got '") + env_value + "'");
    }
    if (env_value[used] != '\0' || v < 1 || v > 1024) {
      throw ConfigError(std::string("SEQMATCH_THREADS must be an integer in [1, 1024], got '") + env_value + "'");
    }
    p = static_cast<unsigned>(v);
  }
  if (flag) {
    if (*flag < 1 || *flag > 1024) throw ConfigError("--parallelism must lie in [1, 1024]");
    p = *flag;
  }
  return p;
}

}  // namespace seqmatch::cli
