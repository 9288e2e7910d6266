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
#include <numeric>
#include <set>

#include "fairrank/items.h"

using namespace fairrank;

namespace {

double mean_of(const ItemTable& table, const std::string& label) {
  double total = 0;
  int count = 0;
  for (int i = 0; i < table.size(); ++i) {
    if (table.labels[i] == std::vector<std::string>{label}) total += table.utility[i], ++count;
  }
  return total / count;
}

}  // namespace

TEST_CASE("synthetic generator") {
  SyntheticSpec spec;
  spec.m = 1000;
  const ItemTable table = gen_synthetic(spec);
  REQUIRE(table.size() == 1000);
  const auto groups = groups_from_labels(table);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].members.size() == 600);
  CHECK(groups[1].members.size() == 400);
  for (double u : table.utility) CHECK((u >= 0.0 && u <= 1.0));
  CHECK(mean_of(table, "G1") == doctest::Approx(0.7).epsilon(0.03));
  CHECK(mean_of(table, "G2") == doctest::Approx(0.35).epsilon(0.05));

  CHECK(items_to_csv(gen_synthetic(spec)) == items_to_csv(table));
  spec.seed = 2;
  CHECK(items_to_csv(gen_synthetic(spec)) != items_to_csv(table));

  SUBCASE("equal means give indistinguishable groups") {
    spec.m = 4000;
    spec.mu_major = spec.mu_minor = 0.5;
    const ItemTable even = gen_synthetic(spec);
    const double gap = mean_of(even, "G1") - mean_of(even, "G2");
    const double se = spec.spread * std::sqrt(1.0 / 2400 + 1.0 / 1600);
    CHECK(std::abs(gap) < 3 * se);
  }
  SUBCASE("bad majority fraction") {
    spec.majority_fraction = 1.0;
    CHECK_THROWS_AS(gen_synthetic(spec), std::invalid_argument);
  }
}

TEST_CASE("item CSV") {
  SUBCASE("round trip") {
    SyntheticSpec spec;
    spec.m = 50;
    const ItemTable table = gen_synthetic(spec);
    const ItemTable back = parse_items_csv(items_to_csv(table));
    CHECK(back.ids == table.ids);
    CHECK(back.utility == table.utility);
    CHECK(back.labels == table.labels);
  }
  SUBCASE("four groups with nesting and comments") {
    const ItemTable table = parse_items_csv(
        "# header comment\n"
        "id,utility,groups\n"
        "a,0.9,north;urban\n"
        "b,0.5,north\n"
        "c,0.4,south\n"
        "d,0.1,south;rural\n"
        "e,0.3,\n");
    const auto groups = groups_from_labels(table);
    REQUIRE(groups.size() == 4);
    CHECK(groups[0].id == "north");
    CHECK(groups[0].members == std::vector<int>{0, 1});
    CHECK(groups[1].members == std::vector<int>{0});
    CHECK(groups[3].members == std::vector<int>{3});
    CHECK(table.labels[4].empty());
  }
  SUBCASE("rejections") {
    CHECK_THROWS_WITH_AS(parse_items_csv("id,utility,groups\na,1,x\na,2,x\n"),
                         doctest::Contains("duplicate id a"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_items_csv("a,high,x\n"), doctest::Contains("bad utility"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_items_csv("a,0.5,x;y\nb,0.4,x\nc,0.3,y\n"),
                         doctest::Contains("overlap without nesting"), std::invalid_argument);
    CHECK_THROWS_AS(parse_items_csv("a\n"), std::invalid_argument);
  }
}

TEST_CASE("subsampling") {
  SyntheticSpec spec;
  spec.m = 200;
  spec.majority_fraction = 0.9;
  const ItemTable table = gen_synthetic(spec);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const ItemTable sub = subsample_items(table, 20, 12, seed);
    REQUIRE(sub.size() == 20);
    CHECK(std::set<std::string>(sub.ids.begin(), sub.ids.end()).size() == 20);
    for (const auto& group : groups_from_labels(sub)) CHECK(group.members.size() >= 6);
  }
  CHECK(items_to_csv(subsample_items(table, 20, 12, 4)) ==
        items_to_csv(subsample_items(table, 20, 12, 4)));
  CHECK_THROWS_AS(subsample_items(table, 201, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(subsample_items(table, 100, 100, 1), std::invalid_argument);

  SUBCASE("single group needs no quota search") {
    ItemTable one;
    for (int i = 0; i < 10; ++i) {
      one.ids.push_back(std::to_string(i));
      one.utility.push_back(i * 0.1);
      one.labels.push_back({"all"});
    }
    CHECK(subsample_items(one, 10, 10, 3).size() == 10);
  }
}
