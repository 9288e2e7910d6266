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

#include "fairrank/pipeline.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "fairrank/birkhoff.h"
#include "fairrank/decomposition.h"
#include "fairrank/flow_network.h"
#include "fairrank/instance_io.h"
#include "fairrank/lp.h"
#include "fairrank/metrics.h"

namespace fairrank {

Instance pad_instance(const Instance& instance) {
  const int m = instance.m();
  const int n = instance.n();
  if (n == m) return instance;
  InstanceData data = instance.data();
  const int q = instance.q();
  const int p = instance.p();
  data.n = m;
  data.real_positions = instance.real_positions();
  std::vector<int> dummy;
  for (int t = n; t < m; ++t) {
    dummy.push_back(t);
    data.v.push_back(instance.v()[n - 1] / std::ldexp(1.0, t - n + 1));
  }
  data.blocks.push_back(dummy);
  data.L.conservativeResize(q + 1, p);
  data.U.conservativeResize(q + 1, p);
  for (int l = 0; l < p; ++l) {
    data.L(q, l) = 0;
    data.U(q, l) = m - n;
  }
  data.C.conservativeResize(m, q + 1);
  data.A.conservativeResize(m, q + 1);
  data.C.col(q).setZero();
  data.A.col(q).setOnes();
  return Instance::create(std::move(data));
}

MatchingMarginal project_g(const MarginalD& D, const std::vector<std::vector<int>>& blocks) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(D.rows(), static_cast<Eigen::Index>(blocks.size()));
  std::vector<int> sizes;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    for (int t : blocks[j]) {
      if (t < 0 || t >= D.cols()) throw std::invalid_argument("project_g: block out of range");
      out.col(j) += D.values().col(t);
    }
    sizes.push_back(static_cast<int>(blocks[j].size()));
  }
  return MatchingMarginal(std::move(out), std::move(sizes), 1e-6);
}

RankingMatrix refine_f(const Matching& matching, std::span<const double> rho,
                       const std::vector<std::vector<int>>& blocks) {
  int num_positions = 0;
  for (const auto& block : blocks) {
    for (int t : block) num_positions = std::max(num_positions, t + 1);
  }
  std::vector<int> item_at(num_positions, -1);
  std::vector<std::vector<int>> members(blocks.size());
  for (int i = 0; i < matching.num_items(); ++i) {
    if (matching.block_of(i) >= 0) members[matching.block_of(i)].push_back(i);
  }
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    auto& items = members[j];
    std::stable_sort(items.begin(), items.end(), [&](int a, int b) {
      if (rho[a] != rho[b]) return rho[a] > rho[b];
      return a < b;
    });
    std::vector<int> positions = blocks[j];
    std::sort(positions.begin(), positions.end());
    if (positions.size() != items.size()) {
      throw std::invalid_argument("refine_f: matching does not fill block " +
                                  std::to_string(j + 1));
    }
    for (std::size_t k = 0; k < items.size(); ++k) item_at[positions[k]] = items[k];
  }
  return RankingMatrix(matching.num_items(), std::move(item_at));
}

std::string instance_fingerprint(const Instance& instance) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : instance_to_json(instance)) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

double expected_utility(const Policy<RankingMatrix>& policy, const Instance& instance) {
  double total = 0.0;
  for (const auto& term : policy.terms()) total += term.weight * utility(term.object, instance);
  return total;
}

RankingPolicy run_main_algorithm(const Instance& instance, std::uint64_t /*seed*/) {
  const LpSolution solution = solve_or_throw(build_fair_program(instance));
  const Instance padded = pad_instance(instance);
  const MarginalD D(square_pad(solution.D), 1e-6);
  const MatchingMarginal projected = project_g(D, padded.blocks());
  const FlowNetwork net = build_network(padded);
  const DecompositionResult decomposition = decompose_matching(projected, net);

  const int n = instance.n();
  std::vector<PolicyTerm<RankingMatrix>> terms;
  for (const auto& term : decomposition.policy.terms()) {
    if (!satisfies_network_bounds(term.object, net)) {
      throw std::logic_error("decomposition produced a matching outside the group bounds");
    }
    const RankingMatrix full = refine_f(term.object, padded.rho(), padded.blocks());
    std::vector<int> prefix(full.items().begin(), full.items().begin() + n);
    terms.push_back({term.weight, RankingMatrix(instance.m(), std::move(prefix))});
  }

  RankingPolicy out;
  out.policy = Policy<RankingMatrix>(std::move(terms));
  out.provenance = "fair-lp+flow-decomposition";
  out.fingerprint = instance_fingerprint(instance);
  out.lp_objective = solution.objective;
  out.decomposition_iterations = decomposition.iterations;
  out.reconstruction_residual = decomposition.residual;

  if (solution.objective > 1e-12) {
    const double ratio = expected_utility(out.policy, instance) / solution.objective;
    const double bound = alpha_bound_blocks(instance.v(), instance.blocks());
    if (ratio < bound - 1e-6) {
      throw std::logic_error("utility ratio " + std::to_string(ratio) +
                             " below the guaranteed " + std::to_string(bound));
    }
  }
  return out;
}

RankingMatrix sample(const RankingPolicy& policy, std::uint64_t seed) {
  return sample_many(policy, seed, 1).front();
}

std::vector<RankingMatrix> sample_many(const RankingPolicy& policy, std::uint64_t seed,
                                       int count) {
  std::vector<double> weights;
  for (const auto& term : policy.policy.terms()) weights.push_back(term.weight);
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::vector<RankingMatrix> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) out.push_back(policy.policy.terms()[pick(rng)].object);
  return out;
}

}  // namespace fairrank
