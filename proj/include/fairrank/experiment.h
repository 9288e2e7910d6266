// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FAIRRANK_EXPERIMENT_H_
#define FAIRRANK_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairrank/items.h"

namespace fairrank {

struct ExperimentConfig {
  // "synthetic", or a path to an items CSV.
  std::string dataset = "synthetic";
  SyntheticSpec synthetic;
  int m = 100;
  int n = 40;
  int k = 20;
  std::vector<double> phis{1.0, 1.5, 2.0};
  std::vector<double> gammas{0.0, 0.5, 1.0};
  int draws = 1;
  int trials = 20000;
  std::uint64_t seed = 1;
  std::vector<std::string> algorithms{"main", "sjk21-if", "sjk21-gf-if", "greedy",
                                      "unconstrained"};
  int workers = 0;
};

// Throws std::invalid_argument on unknown keys' values out of range.
ExperimentConfig config_from_json(const nlohmann::json& doc);
void validate(const ExperimentConfig& config);

struct ExperimentRow {
  std::string dataset;
  int draw = 0;
  std::string algorithm;
  double phi = 0.0;
  double gamma = 0.0;
  double g_violation = 0.0;
  double i_violation = 0.0;
  double utility_norm = 0.0;
  double runtime_ms = 0.0;
  int terms = 0;
  std::string status = "ok";
  // Expected utility over the optimum of the program the policy came from.
  double lp_ratio = 0.0;
  double alpha_bound = 0.0;
  double sigma = 0.0;
};

// Every (draw, phi, gamma, algorithm) cell in key order. Failed cells carry
// the error in `status`.
std::vector<ExperimentRow> run_grid(const ExperimentConfig& config);

// Header comment, then dataset,draw,algorithm,phi,gamma,g_violation,
// i_violation,utility_norm,runtime_ms,T_terms,status.
std::string rows_to_csv(const std::vector<ExperimentRow>& rows);

// results.csv, fairness.svg (individual vs group violation) and utility.svg.
void write_experiment_outputs(const std::vector<ExperimentRow>& rows,
                              const std::filesystem::path& directory);

}  // namespace fairrank

#endif  // FAIRRANK_EXPERIMENT_H_
