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

#include <random>
#include <sstream>

#include "fairrank/instance_io.h"
#include "fairrank/lp.h"
#include "fairrank/pipeline.h"
#include "test_support.h"

using namespace fairrank;

namespace {

int count_label_prefix(const LpProblem& problem, const std::string& prefix) {
  int count = 0;
  for (const auto& row : problem.rows) count += row.label.rfind(prefix, 0) == 0;
  return count;
}

// The fractional optimum, in source item order.
Eigen::MatrixXd expected_fractional_vertex() {
  Eigen::MatrixXd pi(4, 4);
  pi << 0.5, 0, 0.5, 0,
        0, 0.5, 0, 0.5,
        0, 0.5, 0.5, 0,
        0.5, 0, 0, 0.5;
  return pi;
}

Eigen::MatrixXd to_source_order(const Eigen::MatrixXd& internal, const Instance& instance) {
  Eigen::MatrixXd out(internal.rows(), internal.cols());
  for (int i = 0; i < internal.rows(); ++i) out.row(instance.original_id(i)) = internal.row(i);
  return out;
}

// The group- and individually-fair program written out densely from the raw data and solved by the tableau
// oracle.
double oracle_optimum(const InstanceData& data, bool with_groups) {
  const int m = data.m, n = data.n;
  testing::TableauLp lp;
  lp.c.assign(m * n, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int t = 0; t < n; ++t) lp.c[i * n + t] = data.rho[i] * data.v[t];
  }
  for (int t = 0; t < n; ++t) {
    std::vector<double> row(m * n, 0.0);
    for (int i = 0; i < m; ++i) row[i * n + t] = 1;
    lp.add(row, 0, 1);
  }
  for (int i = 0; i < m; ++i) {
    std::vector<double> row(m * n, 0.0);
    for (int t = 0; t < n; ++t) row[i * n + t] = 1;
    lp.add(row, -1, 1);
  }
  for (int i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < data.blocks.size(); ++j) {
      std::vector<double> row(m * n, 0.0);
      for (int t : data.blocks[j]) row[i * n + t] = 1;
      lp.add(row, 1, data.C(i, j));
      lp.add(row, -1, data.A(i, j));
    }
  }
  if (with_groups) {
    for (std::size_t j = 0; j < data.blocks.size(); ++j) {
      for (std::size_t l = 0; l < data.groups.size(); ++l) {
        std::vector<double> row(m * n, 0.0);
        for (int i : data.groups[l].members) {
          for (int t : data.blocks[j]) row[i * n + t] = 1;
        }
        lp.add(row, 1, data.L(j, l));
        lp.add(row, -1, data.U(j, l));
      }
    }
  }
  const auto result = testing::tableau_solve(lp);
  REQUIRE(result.status == testing::TableauStatus::kOptimal);
  return result.objective;
}

}  // namespace

TEST_CASE("fractional-vertex fixture") {
  const Instance instance = load_instance(testing::data_path("fractional_vertex.json"));
  const LpProblem individual_lp = build_individual_program(instance);
  const LpProblem fair_lp = build_fair_program(instance);
  CHECK(individual_lp.num_variables() == 16);
  CHECK_FALSE(individual_lp.has_group_rows);
  CHECK(count_label_prefix(individual_lp, "group") == 0);
  CHECK(count_label_prefix(fair_lp, "group") == 1);
  CHECK(fair_lp.rows.size() == individual_lp.rows.size() + 1);
  // n + m + 2mq (+ 2qp) one-sided constraints before pruning.
  CHECK(individual_lp.constraints_before_pruning == 4 + 4 + 2 * 4 * 3);
  CHECK(fair_lp.constraints_before_pruning == 4 + 4 + 2 * 4 * 3 + 2 * 3 * 1);

  const LpSolution solution = solve(fair_lp);
  REQUIRE(solution.status == LpStatus::kOptimal);
  CHECK(solution.vertex);
  const Eigen::MatrixXd got = to_source_order(solution.D, instance);
  CHECK((got - expected_fractional_vertex()).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(max_row_violation(fair_lp, solution.D) < 1e-8);
  CHECK(solution.objective == doctest::Approx(oracle_optimum(instance.data(), true)));
}

TEST_CASE("a single item has exactly one feasible point") {
  InstanceData data;
  data.m = data.n = 1;
  data.rho = {0.3};
  data.v = {1};
  data.blocks = {{0}};
  data.L = data.U = Eigen::MatrixXi::Zero(1, 0);
  data.C = data.A = Eigen::MatrixXd::Ones(1, 1);
  const LpSolution solution = solve(build_individual_program(Instance::create(data)));
  REQUIRE(solution.status == LpStatus::kOptimal);
  CHECK(solution.D(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("experiment-sized program has m*n variables") {
  InstanceData data;
  data.m = 100;
  data.n = 40;
  data.rho.assign(100, 0.5);
  data.v = dcg_discounts(40);
  data.blocks.resize(2);
  for (int t = 0; t < 40; ++t) data.blocks[t / 20].push_back(t);
  data.L = data.U = Eigen::MatrixXi::Zero(2, 0);
  data.C = Eigen::MatrixXd::Zero(100, 2);
  data.A = Eigen::MatrixXd::Ones(100, 2);
  const LpProblem problem = build_individual_program(Instance::create(data));
  CHECK(problem.num_variables() == 4000);
  // Vacuous individual rows are pruned entirely.
  CHECK(count_label_prefix(problem, "individual") == 0);
}

TEST_CASE("vacuous group bounds add no rows") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    InstanceData data = testing::random_feasible_instance(rng);
    data.L.setZero();
    for (int j = 0; j < data.U.rows(); ++j) {
      for (int l = 0; l < data.U.cols(); ++l) {
        data.U(j, l) = static_cast<int>(data.blocks[j].size());
      }
    }
    const Instance instance = Instance::create(data);
    CHECK(build_fair_program(instance).rows.size() == build_individual_program(instance).rows.size());
  }
}

TEST_CASE("equal representation with one per group per block") {
  InstanceData data;
  data.m = data.n = 4;
  data.rho = {1, 0.8, 0.6, 0.4};
  data.v = dcg_discounts(4);
  data.blocks = {{0, 1}, {2, 3}};
  data.groups = {{"x", {0, 1}}, {"y", {2, 3}}};
  data.L = data.U = Eigen::MatrixXi::Ones(2, 2);
  data.C = Eigen::MatrixXd::Zero(4, 2);
  data.A = Eigen::MatrixXd::Ones(4, 2);
  const Instance instance = Instance::create(data);
  const LpProblem problem = build_fair_program(instance);
  REQUIRE(count_label_prefix(problem, "group") == 4);
  for (const auto& row : problem.rows) {
    if (row.label.rfind("group", 0) == 0) {
      CHECK(row.lower == 1.0);
      CHECK(row.upper == 1.0);
    }
  }
  const LpSolution solution = solve_or_throw(problem);
  // Top block: best of each group.
  CHECK(solution.D(0, 0) == doctest::Approx(1.0));
  CHECK(solution.D(2, 1) == doctest::Approx(1.0));
}

TEST_CASE("overfull individual lower bounds are infeasible") {
  InstanceData data;
  data.m = 3;
  data.n = 2;
  data.rho = {1, 1, 1};
  data.v = {1, 1};
  data.blocks = {{0}, {1}};
  data.L = data.U = Eigen::MatrixXi::Zero(2, 0);
  data.C = Eigen::MatrixXd::Zero(3, 2);
  data.C.col(0).setConstant(0.4);  // 1.2 > |B_1|
  data.A = Eigen::MatrixXd::Ones(3, 2);
  const LpProblem problem = build_individual_program(Instance::create(data));
  const LpSolution solution = solve(problem);
  CHECK(solution.status == LpStatus::kInfeasible);
  CHECK_FALSE(solution.infeasible_rows.empty());
  CHECK_THROWS_AS(solve_or_throw(problem), LpError);
}

TEST_CASE("tightness fixture optimum is one") {
  const Instance instance = load_instance(testing::data_path("tightness.json"));
  const LpSolution solution = solve_or_throw(build_fair_program(instance));
  CHECK(solution.objective == doctest::Approx(1.0));
}

TEST_CASE("random programs match the dense oracle and nest") {
  std::mt19937_64 rng(41);
  testing::RandomInstanceOptions options;
  options.max_m = 6;
  for (int trial = 0; trial < 60; ++trial) {
    const InstanceData data = testing::random_feasible_instance(rng, options);
    const Instance instance = Instance::create(data);
    const LpProblem individual_lp = build_individual_program(instance);
    const LpProblem fair_lp = build_fair_program(instance);
    const LpSolution individual_opt = solve_or_throw(individual_lp);
    const LpSolution fair_opt = solve_or_throw(fair_lp);
    CAPTURE(trial);
    CHECK(fair_opt.objective <= individual_opt.objective + 1e-9);
    CHECK(individual_opt.objective == doctest::Approx(oracle_optimum(data, false)).epsilon(1e-7));
    CHECK(fair_opt.objective == doctest::Approx(oracle_optimum(data, true)).epsilon(1e-7));
    CHECK(max_row_violation(fair_lp, fair_opt.D) < 1e-8);
    CHECK(utility(fair_opt.D, instance.rho(), instance.v()) == doctest::Approx(fair_opt.objective));
  }
}

TEST_CASE("marginal utility equals expected utility of a distribution") {
  const std::vector<double> rho{3, 2, 1}, v{1, 0.5, 0.25};
  const RankingMatrix first(3, {0, 1, 2}), second(3, {2, 0, 1});
  const Eigen::MatrixXd marginal = 0.3 * first.to_dense() + 0.7 * second.to_dense();
  CHECK(utility(marginal, rho, v) ==
        doctest::Approx(0.3 * utility(first, rho, v) + 0.7 * utility(second, rho, v)));
}

TEST_CASE("block bounds on rankings and on projected marginals agree") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const InstanceData data = testing::random_feasible_instance(rng);
    const Instance instance = Instance::create(data);
    const LpSolution solution = solve_or_throw(build_fair_program(instance));
    // Perturb to produce points on both sides of the constraints.
    Eigen::MatrixXd D = solution.D;
    if (trial % 2 == 1) {
      D = 0.5 * D + 0.5 * Eigen::MatrixXd::Constant(D.rows(), D.cols(), 1.0 / D.rows());
    }
    const Eigen::MatrixXd g = project_g(MarginalD(D, 1e-6), instance.blocks()).values();
    for (int j = 0; j < instance.q(); ++j) {
      for (int l = 0; l < instance.p(); ++l) {
        double direct = 0.0, projected = 0.0;
        for (int i : instance.group(l).members) {
          for (int t : instance.block(j)) direct += D(i, t);
          projected += g(i, j);
        }
        const bool in_direct =
            direct >= instance.L()(j, l) - 1e-9 && direct <= instance.U()(j, l) + 1e-9;
        const bool in_projected =
            projected >= instance.L()(j, l) - 1e-9 && projected <= instance.U()(j, l) + 1e-9;
        CHECK(in_direct == in_projected);
      }
      for (int i = 0; i < instance.m(); ++i) {
        double direct = 0.0;
        for (int t : instance.block(j)) direct += D(i, t);
        const bool ok_direct = direct >= instance.C()(i, j) - 1e-9 &&
                               direct <= instance.A()(i, j) + 1e-9;
        const bool ok_projected = g(i, j) >= instance.C()(i, j) - 1e-9 &&
                                  g(i, j) <= instance.A()(i, j) + 1e-9;
        CHECK(ok_direct == ok_projected);
      }
    }
  }
}

TEST_CASE("LP text format") {
  const Instance instance = load_instance(testing::data_path("fractional_vertex.json"));
  std::ostringstream out;
  write_lp_format(build_fair_program(instance), out);
  const std::string text = out.str();
  for (const char* section : {"Maximize", "Subject To", "Bounds", "End"}) {
    CHECK(text.find(section) != std::string::npos);
  }
  CHECK(text.find("group_G1_1_hi:") != std::string::npos);
  CHECK(text.find("<= 1") != std::string::npos);
}
