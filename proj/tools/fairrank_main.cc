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

// Command-line front end: solve, sample, gen-constraints, gen-data, experiment.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairrank/constraints.h"
#include "fairrank/experiment.h"
#include "fairrank/instance_io.h"
#include "fairrank/items.h"
#include "fairrank/lp.h"
#include "fairrank/pipeline.h"
#include "fairrank/policy_io.h"

namespace {

using fairrank::Instance;

void emit(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
  } else {
    fairrank::write_file(path, contents);
  }
}

int run_solve(const std::string& instance_path, const std::string& out_path,
              const std::string& lp_path, std::uint64_t seed) {
  const Instance instance = fairrank::load_instance(instance_path);
  if (!lp_path.empty()) {
    std::ostringstream lp;
    fairrank::write_lp_format(fairrank::build_fair_program(instance), lp);
    fairrank::write_file(lp_path, lp.str());
  }
  const fairrank::RankingPolicy policy = fairrank::run_main_algorithm(instance, seed);
  emit(out_path, fairrank::policy_to_json(policy, instance).dump(1) + "\n");
  return 0;
}

int run_sample(const std::string& policy_path, std::uint64_t seed, int count) {
  const auto doc = nlohmann::json::parse(fairrank::read_file(policy_path));
  const fairrank::RankingPolicy policy = fairrank::policy_from_json(doc);
  for (const auto& ranking : fairrank::sample_many(policy, seed, count)) {
    std::cout << fairrank::ranking_csv_line(ranking) << '\n';
  }
  return 0;
}

struct ConstraintArgs {
  std::string instance_path;
  std::string out_path;
  std::string preset = "phi-upper";
  double phi = 1.0;
  double gamma = 1.0;
  double sigma = -1.0;
  int trials = fairrank::kDefaultTrials;
  std::uint64_t seed = 1;
  bool merge = false;
};

int run_gen_constraints(const ConstraintArgs& args) {
  const Instance instance = fairrank::load_instance(args.instance_path);
  fairrank::InstanceData data = instance.source_order_data();
  int k = 0;
  for (const auto& block : data.blocks) k = std::max<int>(k, static_cast<int>(block.size()));

  fairrank::ConstraintBundle bundle;
  bundle.preset = args.preset;
  bundle.phi = args.phi;
  bundle.gamma = args.gamma;
  bundle.trials = args.trials;
  bundle.seed = args.seed;
  bundle.sigma = args.sigma >= 0.0 ? args.sigma : fairrank::auto_sigma(data.rho, k);
  const fairrank::GroupBounds bounds = fairrank::preset_group_bounds(
      fairrank::parse_group_preset(args.preset), data.blocks, data.groups, data.m, args.phi);
  bundle.L = bounds.L;
  bundle.U = bounds.U;
  fairrank::UncertainUtilityModel model;
  model.mu = data.rho;
  model.sigma.assign(data.rho.size(), bundle.sigma);
  bundle.C = fairrank::build_C_gaussian(model, data.blocks, args.gamma, args.trials, args.seed);
  bundle.A = Eigen::MatrixXd::Ones(data.m, static_cast<int>(data.blocks.size()));

  if (args.merge) {
    data.L = bundle.L;
    data.U = bundle.U;
    data.C = bundle.C;
    data.A = bundle.A;
    emit(args.out_path, fairrank::instance_to_json(Instance::create(std::move(data))) + "\n");
  } else {
    emit(args.out_path, fairrank::bundle_to_json(bundle).dump(1) + "\n");
  }
  return 0;
}

int run_gen_data(const fairrank::SyntheticSpec& spec, const std::string& out_path) {
  emit(out_path, fairrank::items_to_csv(fairrank::gen_synthetic(spec)));
  return 0;
}

int run_experiment(const std::string& config_path, const std::string& out_dir, int workers) {
  fairrank::ExperimentConfig config;
  if (!config_path.empty()) {
    config = fairrank::config_from_json(nlohmann::json::parse(fairrank::read_file(config_path)));
  }
  if (workers > 0) config.workers = workers;
  const auto rows = fairrank::run_grid(config);
  fairrank::write_experiment_outputs(rows, out_dir);
  int failed = 0;
  for (const auto& row : rows) {
    if (row.status != "ok") {
      ++failed;
      std::cerr << row.algorithm << " phi=" << row.phi << " gamma=" << row.gamma << ": "
                << row.status << '\n';
    }
  }
  std::cerr << rows.size() << " cells, " << failed << " failed; results in " << out_dir
            << '\n';
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sample rankings that are individually fair in expectation and group fair "
               "ex post."};
  app.require_subcommand(1);

  std::string instance_path, out_path, lp_path;
  std::uint64_t seed = 0;
  auto* solve = app.add_subcommand("solve", "Compute a ranking policy for an instance");
  solve->add_option("--instance", instance_path, "Instance JSON")->required()->check(
      CLI::ExistingFile);
  solve->add_option("--out", out_path, "Policy JSON (default stdout)");
  solve->add_option("--dump-lp", lp_path, "Also write the linear program in LP format");
  solve->add_option("--seed", seed, "Seed");

  std::string policy_path;
  std::uint64_t sample_seed = 0;
  int count = 1;
  auto* sample = app.add_subcommand("sample", "Draw rankings from a policy");
  sample->add_option("--policy", policy_path, "Policy JSON")->required()->check(
      CLI::ExistingFile);
  sample->add_option("--seed", sample_seed, "Seed")->required();
  sample->add_option("--count", count, "Number of rankings")->check(CLI::PositiveNumber);

  ConstraintArgs constraint_args;
  auto* gen_constraints =
      app.add_subcommand("gen-constraints", "Build fairness constraints for an instance");
  gen_constraints->add_option("--instance", constraint_args.instance_path, "Instance JSON")
      ->required()
      ->check(CLI::ExistingFile);
  gen_constraints->add_option("--out", constraint_args.out_path, "Output JSON");
  gen_constraints->add_option("--preset", constraint_args.preset,
                              "equal | proportional | phi-upper");
  gen_constraints->add_option("--phi", constraint_args.phi, "Upper-bound multiplier");
  gen_constraints->add_option("--gamma", constraint_args.gamma, "Relaxation of C")
      ->check(CLI::Range(0.0, 1.0));
  gen_constraints->add_option("--sigma", constraint_args.sigma,
                              "Noise level (default: chosen from the utilities)");
  gen_constraints->add_option("--trials", constraint_args.trials, "Monte-Carlo trials")
      ->check(CLI::PositiveNumber);
  gen_constraints->add_option("--seed", constraint_args.seed, "Seed");
  gen_constraints->add_flag("--merge", constraint_args.merge,
                            "Emit the instance with the constraints replaced");

  fairrank::SyntheticSpec spec;
  std::string data_out;
  auto* gen_data = app.add_subcommand("gen-data", "Generate item tables");
  gen_data->require_subcommand(1);
  auto* synthetic = gen_data->add_subcommand("synthetic", "Two-group synthetic items");
  synthetic->add_option("--m", spec.m, "Number of items")->check(CLI::PositiveNumber);
  synthetic->add_option("--seed", spec.seed, "Seed");
  synthetic->add_option("--majority", spec.majority_fraction, "Share of the first group")
      ->check(CLI::Range(0.0, 1.0));
  synthetic->add_option("--mu-major", spec.mu_major, "Mean utility of the first group");
  synthetic->add_option("--mu-minor", spec.mu_minor, "Mean utility of the second group");
  synthetic->add_option("--spread", spec.spread, "Standard deviation within a group");
  synthetic->add_option("--out", data_out, "Items CSV (default stdout)");

  std::string config_path, experiment_out = "results";
  int workers = 0;
  auto* experiment = app.add_subcommand("experiment", "Run the experiment grid");
  experiment->add_option("--config", config_path, "Grid JSON")->check(CLI::ExistingFile);
  experiment->add_option("--out", experiment_out, "Output directory");
  experiment->add_option("--workers", workers, "Worker threads");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check an instance file");
  validate->add_option("--instance", validate_path, "Instance JSON")->required()->check(
      CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return run_solve(instance_path, out_path, lp_path, seed);
    if (*sample) return run_sample(policy_path, sample_seed, count);
    if (*gen_constraints) return run_gen_constraints(constraint_args);
    if (*synthetic) return run_gen_data(spec, data_out);
    if (*experiment) return run_experiment(config_path, experiment_out, workers);
    if (*validate) {
      const Instance instance = fairrank::load_instance(validate_path);
      std::cout << "ok: m=" << instance.m() << " n=" << instance.n() << " q=" << instance.q()
                << " p=" << instance.p() << '\n';
      return 0;
    }
  } catch (const fairrank::ParseError& error) {
    std::cerr << "parse error: " << error.what() << '\n';
    return 2;
  } catch (const fairrank::ValidationError& error) {
    for (const auto& violation : error.violations()) {
      std::cerr << violation.kind << ": " << violation.message << '\n';
    }
    return 2;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 1;
  }
  return 0;
}
