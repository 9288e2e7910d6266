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

#ifndef FAIRRANK_CONSTRAINTS_H_
#define FAIRRANK_CONSTRAINTS_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "fairrank/instance.h"

namespace fairrank {

inline constexpr int kDefaultTrials = 20000;

enum class NoiseFamily { kNormal, kTruncatedNormal };

// True utility of item i is mu_i plus noise of scale sigma_i.
struct UncertainUtilityModel {
  std::vector<double> mu;
  std::vector<double> sigma;
  NoiseFamily family = NoiseFamily::kNormal;
  // Range of the means, when drawn from [0, range].
  double range = 0.0;
};

// Monte-Carlo estimate of the probability each item lands in each block when
// items are ranked by a draw of their true utilities (ties by index). Column
// q holds the mass of positions outside every block, so each row sums to 1.
// Trials run in chunks with per-chunk seeds, so results do not depend on
// `workers` (0 means hardware concurrency).
Eigen::MatrixXd estimate_block_probabilities(const UncertainUtilityModel& model,
                                             const std::vector<std::vector<int>>& blocks,
                                             int trials, std::uint64_t seed, int workers = 0);

// gamma times the block columns of estimate_block_probabilities.
Eigen::MatrixXd build_C_gaussian(const UncertainUtilityModel& model,
                                 const std::vector<std::vector<int>>& blocks, double gamma,
                                 int trials, std::uint64_t seed, int workers = 0);

// Smallest sigma such that, on average over items, at least k/2 other items
// have a mean within sigma.
double auto_sigma(std::span<const double> mu, int k);

enum class GroupPreset { kEqual, kProportional, kPhiUpper };
GroupPreset parse_group_preset(const std::string& name);
std::string to_string(GroupPreset preset);

struct GroupBounds {
  Eigen::MatrixXi L;  // q x p
  Eigen::MatrixXi U;
};

// equal: floor/ceil of |B_j|/p; proportional: floor/ceil of |B_j||G|/m;
// phi-upper: L = 0, U = ceil(phi |B_j| / p). Throws std::invalid_argument
// naming (block, group) when the bounds cannot be met.
GroupBounds preset_group_bounds(GroupPreset preset, const std::vector<std::vector<int>>& blocks,
                                const std::vector<Group>& groups, int m, double phi = 1.0);

// Consecutive position pairs {1,2}, {3,4}, ...; a trailing singleton when n is odd.
std::vector<std::vector<int>> pair_blocks(int n);

// Largest additive amount by which a ranking misses prefix bounds (n x p).
int prefix_group_violation(const RankingMatrix& ranking, const Eigen::MatrixXi& L_pre,
                           const Eigen::MatrixXi& U_pre, const std::vector<Group>& groups);

// Block bounds equal to the witness's per-pair group counts. Throws
// std::invalid_argument when the witness violates the prefix bounds.
GroupBounds prefix_to_block_group(const Eigen::MatrixXi& L_pre, const Eigen::MatrixXi& U_pre,
                                  const RankingMatrix& witness, const std::vector<Group>& groups);

// C(i, b) = mass the witness marginal puts item i in pair b. Throws
// std::invalid_argument when the witness violates the prefix lower bounds.
Eigen::MatrixXd prefix_to_block_individual(const Eigen::MatrixXd& C_pre, const MarginalD& witness);

struct ConstraintBundle {
  Eigen::MatrixXi L;
  Eigen::MatrixXi U;
  Eigen::MatrixXd C;
  Eigen::MatrixXd A;
  std::string preset;
  double phi = 0.0;
  double gamma = 0.0;
  double sigma = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
};

// Fields L, U, C, A in the instance file layout plus a "provenance" object.
nlohmann::json bundle_to_json(const ConstraintBundle& bundle);

struct GeneratedInstance {
  Instance instance;
  UncertainUtilityModel model;
};

// Means uniform on [0, S], every sigma equal to sigma_max, blocks of k
// consecutive positions, no groups, DCG discounts, C from the noise model at
// gamma = 1, A = 1. Requires n <= 0.9 m.
GeneratedInstance generate_noisy_utility_instance(int m, int n, int k, double S, double sigma_max,
                                              std::uint64_t seed, int trials = kDefaultTrials);

}  // namespace fairrank

#endif  // FAIRRANK_CONSTRAINTS_H_
