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

#include "fairrank/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fairrank/baselines.h"
#include "fairrank/constraints.h"
#include "fairrank/instance_io.h"
#include "fairrank/metrics.h"
#include "fairrank/pipeline.h"
#include "fairrank/svg_plot.h"

namespace fairrank {
namespace {

const std::vector<std::string> kKnownAlgorithms{"main", "sjk21-if", "sjk21-gf-if", "greedy",
                                                "unconstrained"};

RankingPolicy run_algorithm(const std::string& name, const Instance& instance,
                            std::uint64_t seed) {
  if (name == "main") return run_main_algorithm(instance, seed);
  if (name == "sjk21-if") return baseline_sjk21_if(instance);
  if (name == "sjk21-gf-if") return baseline_sjk21_gf_if(instance);
  if (name == "greedy") return baseline_greedy_group_fair(instance);
  if (name == "unconstrained") return baseline_unconstrained(instance);
  throw std::invalid_argument("unknown algorithm: " + name);
}

// Everything about one dataset draw that does not depend on (phi, gamma).
struct DrawContext {
  ItemTable items;
  std::vector<Group> groups;
  std::vector<std::vector<int>> blocks;
  Eigen::MatrixXd probability;  // m x q, gamma = 1
  double sigma = 0.0;
};

DrawContext prepare_draw(const ExperimentConfig& config, const ItemTable* source, int draw) {
  DrawContext context;
  const std::uint64_t draw_seed = config.seed + 1000003ULL * static_cast<std::uint64_t>(draw);
  if (source == nullptr) {
    SyntheticSpec spec = config.synthetic;
    spec.m = config.m;
    spec.seed = draw_seed;
    context.items = gen_synthetic(spec);
  } else if (source->size() == config.m) {
    context.items = *source;
  } else {
    context.items = subsample_items(*source, config.m, config.n, draw_seed);
  }
  context.groups = groups_from_labels(context.items);
  for (int start = 0; start < config.n; start += config.k) {
    std::vector<int> block;
    for (int t = start; t < std::min(config.n, start + config.k); ++t) block.push_back(t);
    context.blocks.push_back(std::move(block));
  }
  context.sigma = auto_sigma(context.items.utility, config.k);
  UncertainUtilityModel model;
  model.mu = context.items.utility;
  model.sigma.assign(context.items.utility.size(), context.sigma);
  const Eigen::MatrixXd full = estimate_block_probabilities(
      model, context.blocks, config.trials, draw_seed ^ 0x9e3779b97f4a7c15ULL, 1);
  context.probability = full.leftCols(context.blocks.size());
  return context;
}

Instance cell_instance(const ExperimentConfig& config, const DrawContext& context, double phi,
                       double gamma) {
  InstanceData data;
  data.m = config.m;
  data.n = config.n;
  data.rho = context.items.utility;
  data.v = dcg_discounts(config.n);
  data.blocks = context.blocks;
  data.groups = context.groups;
  const GroupBounds bounds = preset_group_bounds(GroupPreset::kPhiUpper, data.blocks,
                                                 data.groups, data.m, phi);
  data.L = bounds.L;
  data.U = bounds.U;
  data.C = gamma * context.probability;
  data.A = Eigen::MatrixXd::Ones(data.m, static_cast<int>(data.blocks.size()));
  return Instance::create(std::move(data));
}

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6g", value);
  return buffer;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& doc) {
  ExperimentConfig config;
  auto read = [&](const char* key, auto& target) {
    if (doc.contains(key)) doc.at(key).get_to(target);
  };
  read("dataset", config.dataset);
  read("m", config.m);
  read("n", config.n);
  read("k", config.k);
  read("phis", config.phis);
  read("gammas", config.gammas);
  read("draws", config.draws);
  read("trials", config.trials);
  read("seed", config.seed);
  read("algorithms", config.algorithms);
  read("workers", config.workers);
  if (doc.contains("synthetic")) {
    const auto& synthetic = doc.at("synthetic");
    auto read_synthetic = [&](const char* key, auto& target) {
      if (synthetic.contains(key)) synthetic.at(key).get_to(target);
    };
    read_synthetic("majority_fraction", config.synthetic.majority_fraction);
    read_synthetic("mu_major", config.synthetic.mu_major);
    read_synthetic("mu_minor", config.synthetic.mu_minor);
    read_synthetic("spread", config.synthetic.spread);
  }
  validate(config);
  return config;
}

void validate(const ExperimentConfig& config) {
  if (config.m < 1 || config.n < 1 || config.n > config.m) {
    throw std::invalid_argument("config: need 1 <= n <= m");
  }
  if (config.k < 1) throw std::invalid_argument("config: k must be positive");
  if (config.trials < 1) throw std::invalid_argument("config: trials must be positive");
  if (config.draws < 1) throw std::invalid_argument("config: draws must be positive");
  for (double phi : config.phis) {
    if (!(phi >= 1.0)) throw std::invalid_argument("config: phi must be at least 1");
  }
  for (double gamma : config.gammas) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
      throw std::invalid_argument("config: gamma must lie in [0,1]");
    }
  }
  for (const auto& name : config.algorithms) {
    if (std::find(kKnownAlgorithms.begin(), kKnownAlgorithms.end(), name) ==
        kKnownAlgorithms.end()) {
      throw std::invalid_argument("config: unknown algorithm " + name);
    }
  }
}

std::vector<ExperimentRow> run_grid(const ExperimentConfig& config) {
  validate(config);
  std::optional<ItemTable> source;
  std::string dataset_name = "synthetic";
  if (config.dataset != "synthetic") {
    source = load_items_csv(config.dataset);
    dataset_name = std::filesystem::path(config.dataset).stem().string();
  }

  std::vector<DrawContext> draws;
  for (int draw = 0; draw < config.draws; ++draw) {
    draws.push_back(prepare_draw(config, source ? &*source : nullptr, draw));
  }
  for (const auto& context : draws) {
    const int p = static_cast<int>(context.groups.size());
    for (double phi : config.phis) {
      if (p > 0 && phi > p) throw std::invalid_argument("config: phi must not exceed p");
    }
  }

  struct Cell {
    int draw;
    std::size_t phi;
    std::size_t gamma;
    std::size_t algorithm;
  };
  std::vector<Cell> cells;
  for (int draw = 0; draw < config.draws; ++draw) {
    for (std::size_t a = 0; a < config.phis.size(); ++a) {
      for (std::size_t b = 0; b < config.gammas.size(); ++b) {
        for (std::size_t c = 0; c < config.algorithms.size(); ++c) {
          cells.push_back({draw, a, b, c});
        }
      }
    }
  }

  std::vector<ExperimentRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t index = next++; index < cells.size(); index = next++) {
      const Cell& cell = cells[index];
      ExperimentRow& row = rows[index];
      row.dataset = dataset_name;
      row.draw = cell.draw;
      row.algorithm = config.algorithms[cell.algorithm];
      row.phi = config.phis[cell.phi];
      row.gamma = config.gammas[cell.gamma];
      row.sigma = draws[cell.draw].sigma;
      const auto start = std::chrono::steady_clock::now();
      try {
        const Instance instance = cell_instance(config, draws[cell.draw], row.phi, row.gamma);
        row.alpha_bound = alpha_bound_blocks(instance.v(), instance.blocks());
        const RankingPolicy result = run_algorithm(row.algorithm, instance, config.seed);
        const MetricsReport report = compute_metrics(result.policy, instance);
        row.g_violation = report.g_violation;
        row.i_violation = report.i_violation;
        row.utility_norm = report.utility_normalized;
        row.terms = static_cast<int>(result.policy.size());
        if (result.lp_objective > 0.0) {
          row.lp_ratio = report.expected_utility / result.lp_objective;
        }
      } catch (const std::exception& error) {
        row.status = std::string("error: ") + error.what();
      }
      row.runtime_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    }
  };
  int workers = config.workers > 0 ? config.workers
                                   : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, static_cast<int>(std::max<std::size_t>(cells.size(), 1)));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& thread : pool) thread.join();
  return rows;
}

std::string rows_to_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream out;
  out << "# discount 1/log2(1+j); utility_norm relative to the unconstrained optimum\n";
  out << "dataset,draw,algorithm,phi,gamma,g_violation,i_violation,utility_norm,runtime_ms,"
         "T_terms,status\n";
  for (const auto& row : rows) {
    out << csv_field(row.dataset) << ',' << row.draw << ',' << row.algorithm << ','
        << format_number(row.phi) << ',' << format_number(row.gamma) << ','
        << format_number(row.g_violation) << ',' << format_number(row.i_violation) << ','
        << format_number(row.utility_norm) << ',' << format_number(row.runtime_ms) << ','
        << row.terms << ',' << csv_field(row.status) << '\n';
  }
  return out.str();
}

void write_experiment_outputs(const std::vector<ExperimentRow>& rows,
                              const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  write_file(directory / "results.csv", rows_to_csv(rows));
  double max_phi = 1.0;
  for (const auto& row : rows) max_phi = std::max(max_phi, row.phi);
  std::vector<ScatterPoint> fairness;
  std::vector<ScatterPoint> utility;
  for (const auto& row : rows) {
    if (row.status != "ok") continue;
    const double size = row.phi / max_phi;
    fairness.push_back({row.g_violation, row.i_violation, size, row.algorithm});
    utility.push_back({row.g_violation, row.utility_norm, size, row.algorithm});
  }
  write_file(directory / "fairness.svg",
             scatter_svg(fairness, "Individual vs group fairness violation", "G violation",
                         "I violation"));
  write_file(directory / "utility.svg",
             scatter_svg(utility, "Utility vs group fairness violation", "G violation",
                         "normalized utility"));
}

}  // namespace fairrank
