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

#include "fairrank/metrics.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace fairrank {

double alpha_bound_blocks(std::span<const double> v, const std::vector<std::vector<int>>& blocks) {
  double bound = 1.0;
  for (const auto& block : blocks) {
    if (block.empty()) continue;
    const int first = *std::min_element(block.begin(), block.end());
    if (v[first] <= 0.0) continue;
    double total = 0.0;
    for (int t : block) total += v[t];
    bound = std::min(bound, total / (static_cast<double>(block.size()) * v[first]));
  }
  return bound;
}

double alpha_bound_k(std::span<const double> v, int k) {
  if (k < 1 || k > static_cast<int>(v.size())) throw std::invalid_argument("alpha_bound_k: bad k");
  const double total = std::accumulate(v.begin(), v.begin() + k, 0.0);
  return total / (k * v[0]);
}

double alpha_bound_delta(std::span<const double> v, int k, double delta) {
  if (delta < 0.0) throw std::invalid_argument("alpha_bound_delta: negative delta");
  if (k < 1 || k > static_cast<int>(v.size())) throw std::invalid_argument("alpha_bound_delta: bad k");
  const double total = std::accumulate(v.begin(), v.begin() + k, 0.0);
  return (1.0 + delta) / (1.0 + k * v[0] * delta / total);
}

double chebyshev_gap(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("chebyshev_gap: size mismatch");
  double cross = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) cross += x[i] * y[i];
  const double sx = std::accumulate(x.begin(), x.end(), 0.0);
  const double sy = std::accumulate(y.begin(), y.end(), 0.0);
  return static_cast<double>(x.size()) * cross - sx * sy;
}

namespace {

constexpr double kProbabilityTolerance = 1e-9;

// counts(j, l): members of group l the ranking places in real block j.
Eigen::MatrixXi group_counts(const RankingMatrix& ranking, const Instance& instance) {
  Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(instance.q(), instance.p());
  for (int t = 0; t < std::min(ranking.num_positions(), instance.real_positions()); ++t) {
    const int j = instance.block_of_position(t);
    for (int l : instance.group_chain(ranking.item_at(t))) ++counts(j, l);
  }
  return counts;
}

}  // namespace

bool ranking_is_group_fair(const RankingMatrix& ranking, const Instance& instance) {
  const Eigen::MatrixXi counts = group_counts(ranking, instance);
  return (counts.array() >= instance.L().array()).all() &&
         (counts.array() <= instance.U().array()).all();
}

Eigen::MatrixXd block_probabilities(const Policy<RankingMatrix>& policy, const Instance& instance) {
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(instance.m(), instance.q());
  for (const auto& term : policy.terms()) {
    const RankingMatrix& ranking = term.object;
    for (int t = 0; t < std::min(ranking.num_positions(), instance.real_positions()); ++t) {
      P(ranking.item_at(t), instance.block_of_position(t)) += term.weight;
    }
  }
  return P;
}

double unconstrained_optimum(const Instance& instance) {
  double total = 0.0;
  for (int t = 0; t < instance.real_positions(); ++t) total += instance.rho()[t] * instance.v()[t];
  return total;
}

MetricsReport compute_metrics(const Policy<RankingMatrix>& policy, const Instance& instance) {
  const int m = instance.m();
  const int q = instance.q();
  MetricsReport report;
  report.group_violation = Eigen::MatrixXd::Zero(q, instance.p());
  for (const auto& term : policy.terms()) {
    const Eigen::MatrixXi counts = group_counts(term.object, instance);
    const auto broken = (counts.array() < instance.L().array()) ||
                        (counts.array() > instance.U().array());
    if (broken.any()) report.g_violation += term.weight;
    report.group_violation += term.weight * broken.cast<double>().matrix();
    report.expected_utility += term.weight * utility(term.object, instance);
  }
  report.block_probability = block_probabilities(policy, instance);
  report.individual_shortfall = Eigen::MatrixXd::Zero(m, q);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < q; ++j) {
      const double c = instance.C()(i, j);
      // Probabilities within rounding of C count as met.
      if (c > 0.0 && report.block_probability(i, j) < c - kProbabilityTolerance) {
        report.individual_shortfall(i, j) = 1.0 - report.block_probability(i, j) / c;
      }
    }
  }
  report.i_violation = m * q > 0 ? report.individual_shortfall.sum() / (m * q) : 0.0;
  report.utility_max = unconstrained_optimum(instance);
  report.utility_normalized =
      report.utility_max > 0.0
          ? std::clamp(report.expected_utility / report.utility_max, 0.0, 1.0)
          : 1.0;
  report.g_violation = std::clamp(report.g_violation, 0.0, 1.0);
  return report;
}

double sampled_g_violation(const Policy<RankingMatrix>& policy, const Instance& instance,
                           std::uint64_t seed, int draws) {
  std::vector<double> weights;
  std::vector<char> fair;
  for (const auto& term : policy.terms()) {
    weights.push_back(term.weight);
    fair.push_back(ranking_is_group_fair(term.object, instance));
  }
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  int violations = 0;
  for (int k = 0; k < draws; ++k) violations += !fair[pick(rng)];
  return draws > 0 ? static_cast<double>(violations) / draws : 0.0;
}

}  // namespace fairrank
