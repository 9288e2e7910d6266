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

#include <cmath>
#include <map>
#include <random>

#include "fairrank/decomposition.h"
#include "fairrank/instance_io.h"
#include "fairrank/lp.h"
#include "fairrank/metrics.h"
#include "fairrank/pipeline.h"
#include "test_support.h"

using namespace fairrank;

namespace {

InstanceData vacuous(int m, int n, std::vector<std::vector<int>> blocks) {
  InstanceData data;
  data.m = m;
  data.n = n;
  for (int i = 0; i < m; ++i) data.rho.push_back(1.0 - 0.1 * i);
  data.v = dcg_discounts(n);
  data.blocks = std::move(blocks);
  const int q = static_cast<int>(data.blocks.size());
  data.L = data.U = Eigen::MatrixXi::Zero(q, 0);
  data.C = Eigen::MatrixXd::Zero(m, q);
  data.A = Eigen::MatrixXd::Ones(m, q);
  return data;
}

// Straight from the definitions, over source-order data.
bool satisfies_group_bounds(const RankingMatrix& ranking, const Instance& instance) {
  std::vector<int> source;
  for (int t = 0; t < ranking.num_positions(); ++t) {
    source.push_back(instance.original_id(ranking.item_at(t)));
  }
  return testing::group_fair(source, instance.source_order_data());
}

}  // namespace

TEST_CASE("padding") {
  SUBCASE("square instances are unchanged") {
    const Instance instance = Instance::create(vacuous(3, 3, {{0}, {1, 2}}));
    const Instance padded = pad_instance(instance);
    CHECK(padded.q() == 2);
    CHECK(padded.v() == instance.v());
  }
  SUBCASE("one dummy block with vacuous bounds") {
    InstanceData data = vacuous(4, 2, {{0, 1}});
    data.groups = {{"g", {0, 2}}};
    data.L = Eigen::MatrixXi::Ones(1, 1);
    data.U = Eigen::MatrixXi::Ones(1, 1);
    data.C.setConstant(0.25);
    const Instance padded = pad_instance(Instance::create(data));
    REQUIRE(padded.n() == 4);
    REQUIRE(padded.q() == 2);
    CHECK(padded.blocks()[1] == std::vector<int>{2, 3});
    CHECK(padded.L()(1, 0) == 0);
    CHECK(padded.U()(1, 0) >= 2);
    CHECK(padded.C().col(1).isZero());
    CHECK(padded.A().col(1).isOnes());
    CHECK(padded.v()[2] > 0);
    CHECK(padded.v()[2] < padded.v()[1]);
    CHECK(padded.v()[3] < padded.v()[2]);
    CHECK(padded.real_positions() == 2);
    CHECK(padded.is_padding(2));
    // Column sums total m, so every matching uses every item.
    CHECK(build_network(padded).items_forced());
  }
}

TEST_CASE("projection onto blocks") {
  SUBCASE("identity ranking") {
    const MatchingMarginal g =
        project_g(MarginalD(Eigen::MatrixXd::Identity(4, 4)), {{0, 1}, {2, 3}});
    Eigen::MatrixXd expected(4, 2);
    expected << 1, 0, 1, 0, 0, 1, 0, 1;
    CHECK(g.values() == expected);
  }
  SUBCASE("fractional vertex column sums") {
    Eigen::MatrixXd pi(4, 4);
    pi << 0.5, 0, 0.5, 0, 0, 0.5, 0, 0.5, 0, 0.5, 0.5, 0, 0.5, 0, 0, 0.5;
    const MatchingMarginal g = project_g(MarginalD(pi), {{0, 1}, {2}, {3}});
    CHECK(g.values().rowwise().sum().isOnes());
    CHECK(g.values().colwise().sum().isApprox(Eigen::RowVector3d(2, 1, 1)));
  }
  SUBCASE("linearity") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> unit(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::MatrixXd a = RankingMatrix(5, {4, 2, 0, 1, 3}).to_dense();
      const Eigen::MatrixXd b = RankingMatrix(5, {0, 1, 2, 3, 4}).to_dense();
      const double w = unit(rng);
      const std::vector<std::vector<int>> blocks{{0, 1}, {2}, {3, 4}};
      const Eigen::MatrixXd mixed = project_g(MarginalD(w * a + (1 - w) * b), blocks).values();
      const Eigen::MatrixXd split = w * project_g(MarginalD(a), blocks).values() +
                                    (1 - w) * project_g(MarginalD(b), blocks).values();
      CHECK(mixed.isApprox(split));
    }
  }
}

TEST_CASE("refinement within blocks") {
  SUBCASE("higher utility first") {
    const std::vector<double> rho{0.2, 0.9};
    const RankingMatrix ranking = refine_f(Matching({0, 0}, {2}), rho, {{0, 1}});
    CHECK(ranking.item_at(0) == 1);
    CHECK(ranking.item_at(1) == 0);
  }
  SUBCASE("ties go to the lower index") {
    const std::vector<double> rho{0.5, 0.5, 0.5};
    const RankingMatrix ranking = refine_f(Matching({0, 1, 0}, {2, 1}), rho, {{0, 2}, {1}});
    CHECK(ranking.item_at(0) == 0);
    CHECK(ranking.item_at(2) == 2);
    CHECK(ranking.item_at(1) == 1);
  }
  SUBCASE("projection undoes refinement") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
      const int m = std::uniform_int_distribution<int>(1, 7)(rng);
      const int n = std::uniform_int_distribution<int>(1, m)(rng);
      const auto blocks = testing::random_blocks(n, rng);
      std::vector<double> rho(m);
      for (double& value : rho) value = coin(rng) ? 0.5 : std::uniform_real_distribution<>(0, 1)(rng);
      std::vector<int> items(m);
      std::iota(items.begin(), items.end(), 0);
      std::shuffle(items.begin(), items.end(), rng);
      std::vector<int> block_of(m, -1), sizes;
      int t = 0;
      for (std::size_t j = 0; j < blocks.size(); ++j) {
        sizes.push_back(static_cast<int>(blocks[j].size()));
        for (std::size_t s = 0; s < blocks[j].size(); ++s) block_of[items[t++]] = static_cast<int>(j);
      }
      const Matching matching(block_of, sizes);
      const RankingMatrix ranking = refine_f(matching, rho, blocks);
      CHECK(project_g(MarginalD(ranking.to_dense()), blocks).values() == matching.to_dense());
      for (const auto& block : blocks) {
        for (std::size_t s = 1; s < block.size(); ++s) {
          const int before = ranking.item_at(block[s - 1]);
          const int after = ranking.item_at(block[s]);
          CHECK((rho[before] > rho[after] || (rho[before] == rho[after] && before < after)));
        }
      }
    }
  }
  SUBCASE("tightness rankings") {
    const std::vector<double> rho{1, 1, 0, 0};
    const std::vector<std::vector<int>> blocks{{0, 1}, {2, 3}};
    CHECK(refine_f(Matching({0, 0, 1, 1}, {2, 2}), rho, blocks).items() ==
          std::vector<int>{0, 1, 2, 3});
    CHECK(refine_f(Matching({1, 1, 0, 0}, {2, 2}), rho, blocks).items() ==
          std::vector<int>{2, 3, 0, 1});
  }
}

TEST_CASE("main algorithm on the fixtures") {
  SUBCASE("fractional vertex") {
    const Instance instance = load_instance(testing::data_path("fractional_vertex.json"));
    const RankingPolicy result = run_main_algorithm(instance, 0);
    for (const auto& term : result.policy.terms()) {
      int top = 0;
      for (int t = 0; t < 2; ++t) top += instance.in_group(term.object.item_at(t), 0);
      CHECK(top <= 1);
      CHECK(satisfies_group_bounds(term.object, instance));
    }
    const Eigen::MatrixXd marginal = result.policy.marginal();
    for (int i = 0; i < 4; ++i) {
      CHECK(marginal(i, 0) + marginal(i, 1) == doctest::Approx(0.5).epsilon(1e-6));
    }
    CHECK(result.fingerprint == instance_fingerprint(instance));
    CHECK(result.reconstruction_residual < 1e-8);
  }
  SUBCASE("tightness") {
    const Instance instance = load_instance(testing::data_path("tightness.json"));
    const RankingPolicy result = run_main_algorithm(instance, 0);
    CHECK(result.lp_objective == doctest::Approx(1.0));
    CHECK(expected_utility(result.policy, instance) == doctest::Approx(0.5));
    CHECK(alpha_bound_k(instance.v(), 2) == doctest::Approx(0.5));
  }
  SUBCASE("no constraints gives the sorted ranking") {
    InstanceData data = vacuous(6, 4, {{0, 1}, {2, 3}});
    data.rho = {0.1, 0.7, 0.3, 0.9, 0.5, 0.2};
    const Instance instance = Instance::create(data);
    const RankingPolicy result = run_main_algorithm(instance, 0);
    REQUIRE(result.policy.size() == 1);
    std::vector<int> source;
    for (int item : result.policy.terms()[0].object.items()) {
      source.push_back(instance.original_id(item));
    }
    CHECK(source == std::vector<int>{3, 1, 4, 2});
  }
}

TEST_CASE("main algorithm guarantees on random instances") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    testing::RandomInstanceOptions options;
    options.max_m = 14;
    const Instance instance = Instance::create(testing::random_feasible_instance(rng, options));
    const RankingPolicy result = run_main_algorithm(instance, 0);
    CAPTURE(trial);
    for (const auto& term : result.policy.terms()) {
      CHECK(satisfies_group_bounds(term.object, instance));
    }
    const Eigen::MatrixXd P = project_g(MarginalD(result.policy.marginal(), 1e-6),
                                        instance.blocks()).values();
    CHECK(((P - instance.C()).array() >= -1e-6).all());
    CHECK(((instance.A() - P).array() >= -1e-6).all());
    const double ratio = expected_utility(result.policy, instance) / result.lp_objective;
    CHECK(ratio >= alpha_bound_blocks(instance.v(), instance.blocks()) - 1e-6);
    CHECK(ratio <= 1 + 1e-9);
  }
}

TEST_CASE("sampling") {
  const Instance instance = load_instance(testing::data_path("tightness.json"));
  const RankingPolicy result = run_main_algorithm(instance, 0);
  REQUIRE(result.policy.size() == 2);
  SUBCASE("frequencies match the weights") {
    const int draws = 100000;
    std::map<std::vector<int>, int> counts;
    for (const auto& ranking : sample_many(result, 7, draws)) ++counts[ranking.items()];
    REQUIRE(counts.size() == 2);
    const double sd = std::sqrt(draws * 0.25);
    for (const auto& [items, count] : counts) CHECK(std::abs(count - draws / 2.0) < 3 * sd);
  }
  SUBCASE("fixed seeds reproduce") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      CHECK(sample(result, seed) == sample(result, seed));
    }
  }
  SUBCASE("a single term is always drawn") {
    RankingPolicy single;
    single.policy = Policy<RankingMatrix>({{1.0, RankingMatrix(3, {2, 1, 0})}});
    for (const auto& ranking : sample_many(single, 3, 100)) {
      CHECK(ranking == RankingMatrix(3, {2, 1, 0}));
    }
  }
}

TEST_CASE("fingerprints identify instances") {
  const Instance a = load_instance(testing::data_path("tightness.json"));
  const Instance b = load_instance(testing::data_path("fractional_vertex.json"));
  CHECK(instance_fingerprint(a) == instance_fingerprint(a));
  CHECK(instance_fingerprint(a) != instance_fingerprint(b));
  CHECK(instance_fingerprint(a).size() == 16);
}
