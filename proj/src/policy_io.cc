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

#include "fairrank/policy_io.h"

#include <stdexcept>

namespace fairrank {
namespace {

RankingPolicy remap(const RankingPolicy& policy, int m, auto&& map) {
  std::vector<PolicyTerm<RankingMatrix>> terms;
  for (const auto& term : policy.policy.terms()) {
    std::vector<int> items;
    for (int item : term.object.items()) items.push_back(map(item));
    terms.push_back({term.weight, RankingMatrix(m, std::move(items))});
  }
  RankingPolicy out = policy;
  out.policy = Policy<RankingMatrix>(std::move(terms));
  return out;
}

}  // namespace

nlohmann::json policy_to_json(const RankingPolicy& policy, const Instance& instance) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& term : policy.policy.terms()) {
    nlohmann::json entries = nlohmann::json::array();
    for (int t = 0; t < term.object.num_positions(); ++t) {
      entries.push_back({instance.original_id(term.object.item_at(t)) + 1, t + 1});
    }
    terms.push_back({{"weight", term.weight}, {"entries", entries}});
  }
  return {{"m", instance.m()},
          {"n", instance.n()},
          {"provenance", policy.provenance},
          {"fingerprint", policy.fingerprint},
          {"lp_objective", policy.lp_objective},
          {"terms", terms}};
}

RankingPolicy policy_from_json(const nlohmann::json& doc) {
  try {
    const int m = doc.at("m").get<int>();
    const int n = doc.at("n").get<int>();
    std::vector<PolicyTerm<RankingMatrix>> terms;
    for (const auto& term : doc.at("terms")) {
      std::vector<int> items(n, -1);
      for (const auto& entry : term.at("entries")) {
        const int item = entry.at(0).get<int>() - 1;
        const int position = entry.at(1).get<int>() - 1;
        if (position < 0 || position >= n) throw std::invalid_argument("position out of range");
        items[position] = item;
      }
      terms.push_back({term.at("weight").get<double>(), RankingMatrix(m, std::move(items))});
    }
    RankingPolicy out;
    out.policy = Policy<RankingMatrix>(std::move(terms));
    out.provenance = doc.value("provenance", "");
    out.fingerprint = doc.value("fingerprint", "");
    out.lp_objective = doc.value("lp_objective", 0.0);
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed policy: ") + e.what());
  }
}

nlohmann::json matching_policy_to_json(const Policy<Matching>& policy, const Instance& instance) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& term : policy.terms()) {
    nlohmann::json entries = nlohmann::json::array();
    for (int i = 0; i < term.object.num_items(); ++i) {
      if (term.object.block_of(i) >= 0) {
        entries.push_back({instance.original_id(i) + 1, term.object.block_of(i) + 1});
      }
    }
    terms.push_back({{"weight", term.weight}, {"entries", entries}});
  }
  return {{"terms", terms}};
}

std::string ranking_csv_line(const RankingMatrix& ranking) {
  std::string line;
  for (int t = 0; t < ranking.num_positions(); ++t) {
    if (t > 0) line += ',';
    line += std::to_string(ranking.item_at(t) + 1);
  }
  return line;
}

RankingPolicy to_original_ids(const RankingPolicy& policy, const Instance& instance) {
  return remap(policy, instance.m(), [&](int item) { return instance.original_id(item); });
}

RankingPolicy to_internal_ids(const RankingPolicy& policy, const Instance& instance) {
  return remap(policy, instance.m(), [&](int item) { return instance.internal_index(item); });
}

}  // namespace fairrank
