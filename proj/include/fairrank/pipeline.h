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

#ifndef FAIRRANK_PIPELINE_H_
#define FAIRRANK_PIPELINE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fairrank/instance.h"

namespace fairrank {

struct RankingPolicy {
  Policy<RankingMatrix> policy;
  // Which program and decomposition produced the policy.
  std::string provenance;
  std::string fingerprint;
  // Optimum of the program that was decomposed; zero for deterministic baselines.
  double lp_objective = 0.0;
  int decomposition_iterations = 0;
  double reconstruction_residual = 0.0;
};

// Extends n to m with one vacuous block of dummy positions whose discounts
// halve past v_n; utilities at those positions are masked.
Instance pad_instance(const Instance& instance);

// g: entry (i, j) is the mass D places item i in block j.
MatchingMarginal project_g(const MarginalD& D, const std::vector<std::vector<int>>& blocks);

// f: within each block, matched items take the block's positions in
// nonincreasing utility order, ties by lower item index.
RankingMatrix refine_f(const Matching& matching, std::span<const double> rho,
                       const std::vector<std::vector<int>>& blocks);

// Stable short hash of the instance's serialized form.
std::string instance_fingerprint(const Instance& instance);

// Solve, project, decompose, refine. Throws LpError, NetworkError or
// DecompositionError, and std::logic_error if the utility guarantee fails.
RankingPolicy run_main_algorithm(const Instance& instance, std::uint64_t seed = 0);

// Draws support ranking t with probability weight_t.
RankingMatrix sample(const RankingPolicy& policy, std::uint64_t seed);
std::vector<RankingMatrix> sample_many(const RankingPolicy& policy, std::uint64_t seed,
                                       int count);

// Expected masked utility of a policy.
double expected_utility(const Policy<RankingMatrix>& policy, const Instance& instance);

}  // namespace fairrank

#endif  // FAIRRANK_PIPELINE_H_
