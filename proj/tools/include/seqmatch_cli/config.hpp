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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "seqmatch/model.hpp"
#include "seqmatch/simulator.hpp"

// Experiment configuration files (JSON). Layout:
//
//   {
//     "model":    { "m1", "m2", "alpha", "beta", "left", "right", "truth" },
//     "test":     { "kind", "horizons", "thresholds"?, "zhou_lambda"?, "max_steps"? },
//     "campaign": { "trials", "master_seed", "parallelism"? },
//     "output":   { "json"?, "csv"? },
//     "exponents":{ "which"?, "lambda"? }
//   }
//
// Unknown keys are rejected so that typos do not silently fall back to defaults.

namespace seqmatch::cli {

struct OutputPaths {
  std::string json;
  std::string csv;

  friend bool operator==(const OutputPaths&, const OutputPaths&) = default;
};

struct ExponentRequest {
  /// Names from exponent_names(); empty means "everything that applies to the model".
  std::vector<std::string> which;
  std::optional<double> lambda;

  friend bool operator==(const ExponentRequest&, const ExponentRequest&) = default;
};

struct ExperimentConfig {
  SourceModel model;
  std::optional<TestSpec> test;
  std::optional<CampaignSpec> campaign;
  OutputPaths output;
  ExponentRequest exponents;
};

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

/// Throws ConfigError on any schema or model violation. "test" and "campaign" must appear
/// together; a campaign without "master_seed" is an error.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

/// Reads and parses a config file; I/O and JSON syntax problems become ConfigError.
ExperimentConfig load_config(const std::string& path);

/// Requires the test and campaign sections.
void require_simulation_sections(const ExperimentConfig& config);

std::uint64_t fnv1a64(std::string_view bytes);

/// 16 hex digits of FNV-1a over the canonical JSON of model, test and campaign. Parallelism
/// and output paths are left out: they do not change the results.
std::string config_hash(const ExperimentConfig& config);

/// Config value, then SEQMATCH_THREADS, then an explicit flag; later sources win.
unsigned resolve_parallelism(unsigned config_value, const char* env_value, std::optional<unsigned> flag);

}  // namespace seqmatch::cli
