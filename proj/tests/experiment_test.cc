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

#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "fairrank/experiment.h"
#include "fairrank/instance_io.h"

using namespace fairrank;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig config;
  config.synthetic.m = 30;
  config.m = 30;
  config.n = 10;
  config.k = 5;
  config.phis = {1.5, 2.0};
  config.gammas = {0.0, 0.5};
  config.trials = 2000;
  config.workers = 2;
  return config;
}

// CSV text with the runtime column blanked.
std::string without_runtime(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') {
      std::vector<std::string> fields;
      std::stringstream cells(line);
      for (std::string cell; std::getline(cells, cell, ',');) fields.push_back(cell);
      fields.at(8).clear();
      line.clear();
      for (std::size_t c = 0; c < fields.size(); ++c) line += (c ? "," : "") + fields[c];
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("small grid") {
  const ExperimentConfig config = small_config();
  const auto rows = run_grid(config);
  REQUIRE(rows.size() == 2 * 2 * 5);
  for (const auto& row : rows) {
    INFO(row.algorithm, " phi=", row.phi, " gamma=", row.gamma, " ", row.status);
    CHECK(row.dataset == "synthetic");
    if (row.status != "ok") continue;
    CHECK((row.g_violation >= 0 && row.g_violation <= 1));
    CHECK((row.utility_norm >= 0 && row.utility_norm <= 1 + 1e-9));
    CHECK(row.terms >= 1);
    if (row.gamma == 0.0) CHECK(row.i_violation == 0.0);
    if (row.algorithm == "main") {
      CHECK(row.g_violation == 0.0);
      CHECK(row.lp_ratio >= row.alpha_bound - 1e-6);
    }
    if (row.algorithm == "unconstrained") CHECK(row.utility_norm == doctest::Approx(1.0));
  }
  CHECK(rows.front().algorithm == "main");
  CHECK(rows[5].gamma == 0.5);

  ExperimentConfig serial = config;
  serial.workers = 1;
  CHECK(without_runtime(rows_to_csv(run_grid(serial))) == without_runtime(rows_to_csv(rows)));

  const std::string csv = rows_to_csv(rows);
  CHECK(csv.rfind("# ", 0) == 0);
  CHECK(csv.find("dataset,draw,algorithm,phi,gamma,g_violation,i_violation,utility_norm,"
                 "runtime_ms,T_terms,status") != std::string::npos);

  const auto dir = std::filesystem::temp_directory_path() / "fairrank_experiment_test";
  std::filesystem::remove_all(dir);
  write_experiment_outputs(rows, dir);
  CHECK(read_file(dir / "results.csv") == csv);
  CHECK(read_file(dir / "fairness.svg").find("<svg") != std::string::npos);
  CHECK(read_file(dir / "utility.svg").find("<svg") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("grid over an item file") {
  const auto path = std::filesystem::temp_directory_path() / "fairrank_items.csv";
  SyntheticSpec spec;
  spec.m = 60;
  write_file(path, items_to_csv(gen_synthetic(spec)));
  ExperimentConfig config = small_config();
  config.dataset = path.string();
  config.draws = 2;
  config.algorithms = {"main", "greedy"};
  const auto rows = run_grid(config);
  CHECK(rows.size() == 2 * 2 * 2 * 2);
  CHECK(rows.front().dataset == "fairrank_items");
  CHECK(rows.back().draw == 1);
  std::filesystem::remove(path);
}

TEST_CASE("config parsing and validation") {
  const auto config = config_from_json(nlohmann::json::parse(R"({
    "m": 20, "n": 8, "k": 4, "phis": [1.25], "gammas": [0.25], "seed": 9,
    "algorithms": ["main"], "synthetic": {"mu_major": 0.6, "spread": 0.1}
  })"));
  CHECK(config.m == 20);
  CHECK(config.phis == std::vector<double>{1.25});
  CHECK(config.seed == 9);
  CHECK(config.synthetic.mu_major == 0.6);
  CHECK(config.synthetic.spread == 0.1);
  CHECK(config.synthetic.mu_minor == 0.35);

  const auto bad = [](const char* text) {
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(text)), std::invalid_argument);
  };
  bad(R"({"n": 200})");
  bad(R"({"k": 0})");
  bad(R"({"phis": [0.5]})");
  bad(R"({"gammas": [1.5]})");
  bad(R"({"algorithms": ["magic"]})");
  ExperimentConfig config3 = small_config();
  config3.phis = {3.0};
  CHECK_THROWS_AS(run_grid(config3), std::invalid_argument);
}
