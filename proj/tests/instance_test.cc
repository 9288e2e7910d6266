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
#include <random>

#include "fairrank/instance.h"
#include "fairrank/instance_io.h"
#include "test_support.h"

using namespace fairrank;

namespace {

InstanceData small_data() {
  InstanceData data;
  data.m = 4;
  data.n = 4;
  data.rho = {0.4, 0.9, 0.1, 0.9};
  data.v = dcg_discounts(4);
  data.blocks = {{0, 1}, {2, 3}};
  data.groups = {{"a", {0, 1}}, {"b", {2, 3}}};
  data.L = Eigen::MatrixXi::Zero(2, 2);
  data.U = Eigen::MatrixXi::Constant(2, 2, 2);
  data.C = Eigen::MatrixXd::Zero(4, 2);
  data.A = Eigen::MatrixXd::Ones(4, 2);
  return data;
}

int count_kind(const std::vector<Violation>& violations, const std::string& kind) {
  int count = 0;
  for (const auto& v : violations) count += v.kind == kind;
  return count;
}

}  // namespace

TEST_CASE("validate accepts a well-formed instance") {
  CHECK(validate(small_data()).empty());
}

TEST_CASE("validate reports overlapping groups once") {
  InstanceData data = small_data();
  data.groups = {{"a", {0, 1}}, {"b", {1, 2}}};
  const auto violations = validate(data);
  CHECK(violations.size() == 1);
  CHECK(count_kind(violations, "laminarity") == 1);
}

TEST_CASE("validate reports L above U") {
  InstanceData data = small_data();
  data.L(0, 0) = 2;
  data.U(0, 0) = 1;
  const auto violations = validate(data);
  CHECK(violations.size() == 1);
  CHECK(count_kind(violations, "bound-order") == 1);
}

TEST_CASE("validate collects every violation") {
  InstanceData data = small_data();
  data.v = {1.0, 2.0, 0.5, 0.1};
  data.blocks = {{0, 1}, {1, 3}};
  data.C(0, 0) = 0.8;
  data.A(0, 0) = 0.5;
  const auto violations = validate(data);
  CHECK(count_kind(violations, "discount") == 1);
  CHECK(count_kind(violations, "block") >= 2);  // position 2 twice, position 3 uncovered
  CHECK(count_kind(violations, "individual-bound") == 1);
  CHECK_THROWS_AS(Instance::create(data), ValidationError);
}

TEST_CASE("nested groups are laminar") {
  InstanceData data = small_data();
  data.groups = {{"outer", {0, 1, 2}}, {"inner", {1, 2}}, {"leaf", {2}}};
  data.L = Eigen::MatrixXi::Zero(2, 3);
  data.U = Eigen::MatrixXi::Constant(2, 3, 2);
  REQUIRE(validate(data).empty());
  const Instance instance = Instance::create(data);
  const auto internal = [&](int source) { return instance.internal_index(source); };
  CHECK(instance.parent_group(0) == -1);
  CHECK(instance.parent_group(1) == 0);
  CHECK(instance.parent_group(2) == 1);
  CHECK(instance.minimal_group(internal(2)) == 2);
  CHECK(instance.minimal_group(internal(0)) == 0);
  CHECK(instance.minimal_group(internal(3)) == -1);
  CHECK(instance.group_chain(internal(2)) == std::vector<int>{2, 1, 0});
}

TEST_CASE("items are stored by nonincreasing utility with stable ties") {
  const Instance instance = Instance::create(small_data());
  CHECK(instance.rho() == std::vector<double>{0.9, 0.9, 0.4, 0.1});
  CHECK(instance.original_id(0) == 1);
  CHECK(instance.original_id(1) == 3);
  CHECK(instance.original_id(2) == 0);
  CHECK(instance.original_id(3) == 2);
  for (int i = 0; i < 4; ++i) CHECK(instance.internal_index(instance.original_id(i)) == i);
  // Group membership follows the items.
  CHECK(instance.in_group(instance.internal_index(2), 1));
  CHECK_FALSE(instance.in_group(instance.internal_index(2), 0));
}

TEST_CASE("source order round trip") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const InstanceData data = testing::random_feasible_instance(rng);
    const InstanceData back = Instance::create(data).source_order_data();
    CHECK(back.rho == data.rho);
    CHECK(back.C.isApprox(data.C));
    CHECK(back.A.isApprox(data.A));
    REQUIRE(back.groups.size() == data.groups.size());
    for (std::size_t l = 0; l < data.groups.size(); ++l) {
      auto members = back.groups[l].members;
      std::sort(members.begin(), members.end());
      CHECK(members == data.groups[l].members);
    }
  }
}

TEST_CASE("ranking matrices") {
  const RankingMatrix ranking(5, {3, 0, 4});
  const Eigen::MatrixXd dense = ranking.to_dense();
  CHECK(dense.rows() == 5);
  CHECK(dense.cols() == 3);
  CHECK(dense.colwise().sum().isOnes());
  for (int i = 0; i < 5; ++i) {
    const double row = dense.row(i).sum();
    CHECK((row == 0.0 || row == 1.0));
  }
  CHECK(ranking.position_of(1) == -1);
  CHECK(RankingMatrix::from_dense(dense) == ranking);
  CHECK_THROWS(RankingMatrix(3, {0, 0}));
  Eigen::MatrixXd broken = dense;
  broken(1, 0) = 1.0;
  CHECK_THROWS(RankingMatrix::from_dense(broken));
}

TEST_CASE("matchings and marginals enforce their sums") {
  CHECK_NOTHROW(Matching({0, -1, 1, 0}, {2, 1}));
  CHECK_THROWS(Matching({0, 0, 0, 1}, {2, 1}));
  Eigen::MatrixXd half = Eigen::MatrixXd::Constant(2, 2, 0.5);
  CHECK_NOTHROW(MarginalD(half));
  half(0, 0) = 0.6;
  CHECK_THROWS(MarginalD(half));
  CHECK_NOTHROW(MatchingMarginal(Eigen::MatrixXd::Constant(4, 2, 0.5), {2, 2}));
  CHECK_THROWS(MatchingMarginal(Eigen::MatrixXd::Constant(4, 2, 0.5), {3, 1}));
}

TEST_CASE("utility examples") {
  const RankingMatrix identity(4, {0, 1, 2, 3});
  const std::vector<double> rho{1, 1, 0, 0}, v{1, 0, 0, 0};
  CHECK(utility(identity, rho, v) == doctest::Approx(1.0));
  const std::vector<double> zero(4, 0.0);
  CHECK(utility(identity, zero, v) == 0.0);
  const RankingMatrix three(3, {0, 1, 2});
  const std::vector<double> rho3{3, 2, 1}, v3{1, 0.5, 0.25};
  CHECK(utility(three, rho3, v3) == doctest::Approx(4.25));
  CHECK_THROWS_AS(utility(three, rho, v3), std::invalid_argument);
}

TEST_CASE("utility is linear in rho") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> order(6);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const RankingMatrix ranking(6, order);
    std::vector<double> rho(6), scaled(6);
    const double a = 3.0 * unit(rng);
    for (int i = 0; i < 6; ++i) {
      rho[i] = unit(rng);
      scaled[i] = a * rho[i];
    }
    const auto v = dcg_discounts(6);
    CHECK(utility(ranking, scaled, v) == doctest::Approx(a * utility(ranking, rho, v)));
  }
}

TEST_CASE("every ranking of a small instance has unit columns and 0/1 rows") {
  for (const auto& items : testing::all_rankings(4, 3)) {
    const Eigen::MatrixXd dense = RankingMatrix(4, items).to_dense();
    CHECK(dense.colwise().sum().isOnes());
    CHECK((dense.rowwise().sum().array() <= 1.0).all());
  }
}

TEST_CASE("DCG discounts") {
  const auto v = dcg_discounts(4);
  CHECK(v[0] == doctest::Approx(1.0));
  CHECK(v[1] == doctest::Approx(1.0 / std::log2(3.0)));
  CHECK(v[3] == doctest::Approx(1.0 / std::log2(5.0)));
}

TEST_CASE("instance files") {
  SUBCASE("fractional-vertex fixture loads") {
    const Instance instance = load_instance(testing::data_path("fractional_vertex.json"));
    CHECK(instance.m() == 4);
    CHECK(instance.n() == 4);
    CHECK(instance.p() == 1);
    CHECK(instance.q() == 3);
  }
  SUBCASE("missing field names it with a line") {
    const std::string text = "{\n \"m\": 2,\n \"n\": 2,\n \"v\": [1, 1]\n}";
    try {
      parse_instance(text);
      FAIL("expected a parse error");
    } catch (const ParseError& error) {
      CHECK(std::string(error.what()).find("rho") != std::string::npos);
    }
  }
  SUBCASE("syntax error reports its line") {
    const std::string text = "{\n \"m\": 2,\n \"n\": 2,,\n}";
    try {
      parse_instance(text);
      FAIL("expected a parse error");
    } catch (const ParseError& error) {
      CHECK(error.line() == 3);
    }
  }
  SUBCASE("increasing discounts are rejected") {
    InstanceData data;
    data.m = 2;
    data.n = 2;
    data.rho = {1, 0};
    data.v = {1.0, 2.0};
    data.blocks = {{0}, {1}};
    data.L = data.U = Eigen::MatrixXi::Zero(2, 0);
    data.C = Eigen::MatrixXd::Zero(2, 2);
    data.A = Eigen::MatrixXd::Ones(2, 2);
    const std::string text = instance_data_to_json(data).dump();
    try {
      parse_instance(text);
      FAIL("expected a validation error");
    } catch (const ValidationError& error) {
      REQUIRE(error.violations().size() == 1);
      CHECK(error.violations()[0].kind == "discount");
    }
  }
  SUBCASE("save then load is the identity") {
    std::mt19937_64 rng(5);
    const auto path = std::filesystem::temp_directory_path() / "fairrank_roundtrip.json";
    for (int trial = 0; trial < 10; ++trial) {
      const InstanceData data = testing::random_feasible_instance(rng);
      save_instance(Instance::create(data), path);
      const InstanceData back = load_instance(path).source_order_data();
      CHECK(back.m == data.m);
      CHECK(back.n == data.n);
      CHECK(back.rho == data.rho);
      CHECK(back.v == data.v);
      CHECK(back.blocks == data.blocks);
      CHECK(back.L == data.L);
      CHECK(back.U == data.U);
      CHECK(back.C == data.C);
      CHECK(back.A == data.A);
    }
    std::filesystem::remove(path);
  }
}
