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

#ifndef FAIRRANK_METRICS_H_
#define FAIRRANK_METRICS_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fairrank/instance.h"

namespace fairrank {

// min over blocks of (sum of the block's discounts) / (|B_j| * first discount).
// Blocks whose first discount is zero carry no utility and are skipped.
double alpha_bound_blocks(std::span<const double> v, const std::vector<std::vector<int>>& blocks);
// (v_1 + ... + v_k) / (k v_1).
double alpha_bound_k(std::span<const double> v, int k);
// (1 + delta) / (1 + k v_1 delta / (v_1 + ... + v_k)) for utilities whose
// max/min ratio is at most 1 + delta.
double alpha_bound_delta(std::span<const double> v, int k, double delta);

// n * sum x_i y_i - (sum x_i)(sum y_i); nonnegative when x and y are sorted
// the same way.
double chebyshev_gap(std::span<const double> x, std::span<const double> y);

// Exact (L, U) check over the instance's real blocks.
bool ranking_is_group_fair(const RankingMatrix& ranking, const Instance& instance);

// P(i, j): probability the policy places item i in real block j.
Eigen::MatrixXd block_probabilities(const Policy<RankingMatrix>& policy, const Instance& instance);

// Utility of the utility-sorted ranking of the top n items.
double unconstrained_optimum(const Instance& instance);

struct MetricsReport {
  double g_violation = 0.0;
  double i_violation = 0.0;
  double utility_normalized = 0.0;
  double expected_utility = 0.0;
  // Normalizer: the unconstrained optimum.
  double utility_max = 0.0;
  Eigen::MatrixXd block_probability;      // m x q
  Eigen::MatrixXd individual_shortfall;   // m x q, max(1 - P/C, 0)
  Eigen::MatrixXd group_violation;        // q x p, probability each bound breaks
};

// Exact evaluation over the policy support.
MetricsReport compute_metrics(const Policy<RankingMatrix>& policy, const Instance& instance);

// Monte-Carlo estimate of g_violation from `draws` sampled rankings.
double sampled_g_violation(const Policy<RankingMatrix>& policy, const Instance& instance,
                           std::uint64_t seed, int draws);

}  // namespace fairrank

#endif  // FAIRRANK_METRICS_H_
