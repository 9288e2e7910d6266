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

#include "fairrank/baselines.h"

#include <algorithm>
#include <numeric>

#include "fairrank/birkhoff.h"
#include "fairrank/lp.h"

namespace fairrank {
namespace {

RankingPolicy deterministic(const Instance& instance, std::vector<int> items,
                            const char* provenance) {
  RankingPolicy out;
  out.policy = Policy<RankingMatrix>({{1.0, RankingMatrix(instance.m(), std::move(items))}});
  out.provenance = provenance;
  out.fingerprint = instance_fingerprint(instance);
  return out;
}

RankingPolicy birkhoff_policy(const Instance& instance, const LpProblem& problem,
                              const char* provenance) {
  const LpSolution solution = solve_or_throw(problem);
  RankingPolicy out;
  out.policy = birkhoff_decompose(MarginalD(solution.D, 1e-6));
  out.provenance = provenance;
  out.fingerprint = instance_fingerprint(instance);
  out.lp_objective = solution.objective;
  out.reconstruction_residual =
      (out.policy.marginal() - solution.D).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace

RankingPolicy baseline_unconstrained(const Instance& instance) {
  std::vector<int> items(instance.n());
  std::iota(items.begin(), items.end(), 0);
  return deterministic(instance, std::move(items), "unconstrained");
}

RankingPolicy baseline_greedy_group_fair(const Instance& instance) {
  const int m = instance.m();
  const int n = instance.n();
  const int p = instance.p();
  std::vector<char> placed(m, 0);
  // Unplaced members per group.
  std::vector<int> available(p);
  for (int l = 0; l < p; ++l) available[l] = instance.group_size(l);
  Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(instance.q(), p);
  std::vector<int> filled(instance.q(), 0);

  // Children before parents, so lower-bound needs can be pushed upward.
  std::vector<int> order(p);
  std::iota(order.begin(), order.end(), 0);
  auto depth = [&](int l) {
    int d = 0;
    for (int k = instance.parent_group(l); k >= 0; k = instance.parent_group(k)) ++d;
    return d;
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return depth(a) > depth(b); });

  auto completable = [&](int j, int slots_left) {
    std::vector<int> need(p, 0);
    int root_need = 0;
    for (int l : order) {
      int children = 0;
      for (int k : instance.child_groups(l)) children += need[k];
      need[l] = std::max(instance.L()(j, l) - counts(j, l), children);
      if (need[l] > instance.U()(j, l) - counts(j, l) || need[l] > available[l]) return false;
      if (instance.parent_group(l) < 0) root_need += need[l];
    }
    return root_need <= slots_left;
  };

  std::vector<int> ranking;
  for (int t = 0; t < n; ++t) {
    const int j = instance.block_of_position(t);
    int chosen = -1;
    for (int i = 0; i < m && chosen < 0; ++i) {
      if (placed[i]) continue;
      const std::vector<int> chain = instance.group_chain(i);
      bool ok = true;
      for (int l : chain) ok = ok && counts(j, l) + 1 <= instance.U()(j, l);
      if (!ok) continue;
      for (int l : chain) {
        ++counts(j, l);
        --available[l];
      }
      if (completable(j, instance.block_size(j) - filled[j] - 1)) chosen = i;
      for (int l : chain) {
        --counts(j, l);
        ++available[l];
      }
    }
    if (chosen < 0) {
      throw GreedyDeadEnd("greedy baseline found no eligible item for position " +
                          std::to_string(t + 1));
    }
    placed[chosen] = 1;
    for (int l : instance.group_chain(chosen)) {
      ++counts(j, l);
      --available[l];
    }
    ++filled[j];
    ranking.push_back(chosen);
  }
  return deterministic(instance, std::move(ranking), "greedy-group-fair");
}

RankingPolicy baseline_sjk21_if(const Instance& instance) {
  return birkhoff_policy(instance, build_individual_program(instance), "individual-lp+birkhoff");
}

RankingPolicy baseline_sjk21_gf_if(const Instance& instance) {
  return birkhoff_policy(instance, build_fair_program(instance), "fair-lp+birkhoff");
}

}  // namespace fairrank
