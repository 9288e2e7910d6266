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

#ifndef FAIRRANK_POLICY_IO_H_
#define FAIRRANK_POLICY_IO_H_

#include <string>

#include <json.hpp>

#include "fairrank/instance.h"
#include "fairrank/pipeline.h"

namespace fairrank {

// {"m", "n", "provenance", "fingerprint", "lp_objective", "terms": [{"weight",
// "entries": [[item, position], ...]}]} with 1-indexed original item ids.
nlohmann::json policy_to_json(const RankingPolicy& policy, const Instance& instance);

// Rankings come back indexed by original item id (0-based).
RankingPolicy policy_from_json(const nlohmann::json& doc);

// Matchings as sparse (item, block) coordinates, 1-indexed original ids.
nlohmann::json matching_policy_to_json(const Policy<Matching>& policy, const Instance& instance);

// Item ids by position, comma separated.
std::string ranking_csv_line(const RankingMatrix& ranking);

// Re-indexes a policy from internal item indices to original ids.
RankingPolicy to_original_ids(const RankingPolicy& policy, const Instance& instance);
// Re-indexes a policy from original ids to the instance's internal order.
RankingPolicy to_internal_ids(const RankingPolicy& policy, const Instance& instance);

}  // namespace fairrank

#endif  // FAIRRANK_POLICY_IO_H_
