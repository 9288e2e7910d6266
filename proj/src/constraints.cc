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

#include "fairrank/constraints.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

namespace fairrank {
namespace {

constexpr int kChunkSize = 1000;

void check_blocks(const std::vector<std::vector<int>>& blocks, int m) {
  for (const auto& block : blocks) {
    for (int t : block) {
      if (t < 0 || t >= m) throw std::invalid_argument("block position outside 0..m-1");
    }
  }
}

}  // namespace

Eigen::MatrixXd estimate_block_probabilities(const UncertainUtilityModel& model,
                                             const std::vector<std::vector<int>>& blocks,
                                             int trials, std::uint64_t seed, int workers) {
  const int m = static_cast<int>(model.mu.size());
  const int q = static_cast<int>(blocks.size());
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (static_cast<int>(model.sigma.size()) != m) {
    throw std::invalid_argument("model needs one sigma per item");
  }
  for (double s : model.sigma) {
    if (!(s >= 0.0)) throw std::invalid_argument("sigma must be nonnegative");
  }
  check_blocks(blocks, m);
  std::vector<int> block_of_position(m, q);
  for (int j = 0; j < q; ++j) {
    for (int t : blocks[j]) block_of_position[t] = j;
  }

  const int chunks = (trials + kChunkSize - 1) / kChunkSize;
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, chunks);

  std::vector<long long> total(static_cast<std::size_t>(m) * (q + 1), 0);
  std::mutex merge;
  std::atomic<int> next{0};
  auto work = [&]() {
    std::vector<long long> counts(total.size(), 0);
    std::vector<double> draw(m);
    std::vector<int> order(m);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int chunk = next++; chunk < chunks; chunk = next++) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(chunk)};
      std::mt19937_64 rng(seq);
      const int begin = chunk * kChunkSize;
      const int end = std::min(trials, begin + kChunkSize);
      for (int trial = begin; trial < end; ++trial) {
        for (int i = 0; i < m; ++i) {
          double z = normal(rng);
          if (model.family == NoiseFamily::kTruncatedNormal) {
            while (std::abs(z) > 4.0) z = normal(rng);
          }
          draw[i] = model.mu[i] + model.sigma[i] * z;
        }
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
          if (draw[a] != draw[b]) return draw[a] > draw[b];
          return a < b;
        });
        for (int t = 0; t < m; ++t) {
          ++counts[static_cast<std::size_t>(order[t]) * (q + 1) + block_of_position[t]];
        }
      }
    }
    std::lock_guard<std::mutex> lock(merge);
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += counts[k];
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& thread : pool) thread.join();

  Eigen::MatrixXd out(m, q + 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= q; ++j) {
      out(i, j) = static_cast<double>(total[static_cast<std::size_t>(i) * (q + 1) + j]) / trials;
    }
  }
  return out;
}

Eigen::MatrixXd build_C_gaussian(const UncertainUtilityModel& model,
                                 const std::vector<std::vector<int>>& blocks, double gamma,
                                 int trials, std::uint64_t seed, int workers) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0,1]");
  const Eigen::MatrixXd probability =
      estimate_block_probabilities(model, blocks, trials, seed, workers);
  return gamma * probability.leftCols(blocks.size());
}

double auto_sigma(std::span<const double> mu, int k) {
  if (k < 1) throw std::invalid_argument("auto_sigma: k must be at least 1");
  const int m = static_cast<int>(mu.size());
  if (m < 2) return 0.0;
  // Mean neighbour count at sigma is 2 * #{pairs with gap <= sigma} / m, a step
  // function jumping at the pairwise gaps.
  std::vector<double> gaps;
  gaps.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) gaps.push_back(std::abs(mu[a] - mu[b]));
  }
  std::sort(gaps.begin(), gaps.end());
  const double target = k / 2.0;
  for (std::size_t pairs = 1; pairs <= gaps.size(); ++pairs) {
    if (2.0 * static_cast<double>(pairs) / m >= target) return gaps[pairs - 1];
  }
  return gaps.back();
}

GroupPreset parse_group_preset(const std::string& name) {
  if (name == "equal") return GroupPreset::kEqual;
  if (name == "proportional") return GroupPreset::kProportional;
  if (name == "phi-upper") return GroupPreset::kPhiUpper;
  throw std::invalid_argument("unknown group preset: " + name);
}

std::string to_string(GroupPreset preset) {
  switch (preset) {
    case GroupPreset::kEqual: return "equal";
    case GroupPreset::kProportional: return "proportional";
    case GroupPreset::kPhiUpper: return "phi-upper";
  }
  return "unknown";
}

GroupBounds preset_group_bounds(GroupPreset preset, const std::vector<std::vector<int>>& blocks,
                                const std::vector<Group>& groups, int m, double phi) {
  const int q = static_cast<int>(blocks.size());
  const int p = static_cast<int>(groups.size());
  if (p == 0) return {Eigen::MatrixXi(q, 0), Eigen::MatrixXi(q, 0)};
  if (preset == GroupPreset::kPhiUpper && !(phi >= 1.0 && phi <= p)) {
    throw std::invalid_argument("phi must lie in [1, p]");
  }
  GroupBounds out{Eigen::MatrixXi(q, p), Eigen::MatrixXi(q, p)};
  for (int j = 0; j < q; ++j) {
    const double k = static_cast<double>(blocks[j].size());
    for (int l = 0; l < p; ++l) {
      const double size = static_cast<double>(groups[l].members.size());
      double share = 0.0;
      switch (preset) {
        case GroupPreset::kEqual: share = k / p; break;
        case GroupPreset::kProportional: share = k * size / m; break;
        case GroupPreset::kPhiUpper: share = phi * k / p; break;
      }
      const int up = static_cast<int>(std::ceil(share - 1e-9));
      const int low = static_cast<int>(std::floor(share + 1e-9));
      out.L(j, l) = preset == GroupPreset::kPhiUpper ? 0 : low;
      out.U(j, l) = up;
      if (out.L(j, l) > std::min(static_cast<int>(k), static_cast<int>(size))) {
        throw std::invalid_argument("lower bound at block " + std::to_string(j + 1) +
                                    ", group " + groups[l].id + " exceeds what can be placed");
      }
    }
  }

  // Top-level groups are disjoint: their lower bounds must fit in the block,
  // and when they cover every item their upper bounds must fill it.
  std::vector<int> top;
  for (int l = 0; l < p; ++l) {
    bool nested = false;
    for (int k = 0; k < p && !nested; ++k) {
      if (k == l) continue;
      const auto& outer = groups[k].members;
      const auto& inner = groups[l].members;
      nested = inner.size() <= outer.size() &&
               std::all_of(inner.begin(), inner.end(), [&](int i) {
                 return std::find(outer.begin(), outer.end(), i) != outer.end();
               }) &&
               (inner.size() < outer.size() || k < l);
    }
    if (!nested) top.push_back(l);
  }
  std::size_t covered = 0;
  for (int l : top) covered += groups[l].members.size();
  for (int j = 0; j < q; ++j) {
    int low = 0;
    int up = 0;
    for (int l : top) {
      low += out.L(j, l);
      up += out.U(j, l);
    }
    const int k = static_cast<int>(blocks[j].size());
    if (low > k || (static_cast<int>(covered) == m && up < k)) {
      throw std::invalid_argument("group bounds infeasible at block " + std::to_string(j + 1) +
                                  ", group " + groups[top.front()].id);
    }
  }
  return out;
}

std::vector<std::vector<int>> pair_blocks(int n) {
  std::vector<std::vector<int>> blocks;
  for (int t = 0; t < n; t += 2) {
    blocks.push_back(t + 1 < n ? std::vector<int>{t, t + 1} : std::vector<int>{t});
  }
  return blocks;
}

int prefix_group_violation(const RankingMatrix& ranking, const Eigen::MatrixXi& L_pre,
                           const Eigen::MatrixXi& U_pre, const std::vector<Group>& groups) {
  const int n = ranking.num_positions();
  const int p = static_cast<int>(groups.size());
  if (L_pre.rows() != n || U_pre.rows() != n || L_pre.cols() != p || U_pre.cols() != p) {
    throw std::invalid_argument("prefix bounds must be n x p");
  }
  std::vector<std::vector<char>> member(p, std::vector<char>(ranking.num_items(), 0));
  for (int l = 0; l < p; ++l) {
    for (int i : groups[l].members) member[l][i] = 1;
  }
  std::vector<int> count(p, 0);
  int worst = 0;
  for (int t = 0; t < n; ++t) {
    for (int l = 0; l < p; ++l) {
      count[l] += member[l][ranking.item_at(t)];
      worst = std::max({worst, count[l] - U_pre(t, l), L_pre(t, l) - count[l]});
    }
  }
  return worst;
}

GroupBounds prefix_to_block_group(const Eigen::MatrixXi& L_pre, const Eigen::MatrixXi& U_pre,
                                  const RankingMatrix& witness, const std::vector<Group>& groups) {
  if (prefix_group_violation(witness, L_pre, U_pre, groups) > 0) {
    throw std::invalid_argument("witness ranking violates the prefix bounds");
  }
  const auto blocks = pair_blocks(witness.num_positions());
  const int q = static_cast<int>(blocks.size());
  const int p = static_cast<int>(groups.size());
  GroupBounds out{Eigen::MatrixXi::Zero(q, p), Eigen::MatrixXi::Zero(q, p)};
  for (int j = 0; j < q; ++j) {
    for (int l = 0; l < p; ++l) {
      for (int t : blocks[j]) {
        const auto& members = groups[l].members;
        if (std::find(members.begin(), members.end(), witness.item_at(t)) != members.end()) {
          ++out.L(j, l);
        }
      }
    }
  }
  out.U = out.L;
  return out;
}

Eigen::MatrixXd prefix_to_block_individual(const Eigen::MatrixXd& C_pre, const MarginalD& witness) {
  const int m = witness.rows();
  const int n = witness.cols();
  if (C_pre.rows() != m || C_pre.cols() != n) throw std::invalid_argument("C_pre must be m x n");
  for (int i = 0; i < m; ++i) {
    double prefix = 0.0;
    for (int t = 0; t < n; ++t) {
      prefix += witness(i, t);
      if (prefix < C_pre(i, t) - 1e-9) {
        throw std::invalid_argument("witness marginal violates the prefix lower bounds at item " +
                                    std::to_string(i + 1) + ", position " + std::to_string(t + 1));
      }
    }
  }
  const auto blocks = pair_blocks(n);
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(m, static_cast<Eigen::Index>(blocks.size()));
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    for (int t : blocks[j]) C.col(j) += witness.values().col(t);
  }
  return C.cwiseMin(1.0);
}

nlohmann::json bundle_to_json(const ConstraintBundle& bundle) {
  auto rows = [](const auto& mat) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index r = 0; r < mat.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < mat.cols(); ++c) row.push_back(mat(r, c));
      out.push_back(row);
    }
    return out;
  };
  return {{"L", rows(bundle.L)},
          {"U", rows(bundle.U)},
          {"C", rows(bundle.C)},
          {"A", rows(bundle.A)},
          {"provenance",
           {{"preset", bundle.preset},
            {"phi", bundle.phi},
            {"gamma", bundle.gamma},
            {"sigma", bundle.sigma},
            {"trials", bundle.trials},
            {"seed", bundle.seed}}}};
}

GeneratedInstance generate_noisy_utility_instance(int m, int n, int k, double S, double sigma_max,
                                              std::uint64_t seed, int trials) {
  if (n < 1 || k < 1 || n > 0.9 * m) {
    throw std::invalid_argument("need 1 <= n <= 0.9 m and k >= 1");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, S);
  UncertainUtilityModel model;
  model.range = S;
  for (int i = 0; i < m; ++i) model.mu.push_back(uniform(rng));
  model.sigma.assign(m, sigma_max);

  InstanceData data;
  data.m = m;
  data.n = n;
  data.rho = model.mu;
  data.v = dcg_discounts(n);
  for (int t = 0; t < n; t += k) {
    std::vector<int> block;
    for (int s = t; s < std::min(n, t + k); ++s) block.push_back(s);
    data.blocks.push_back(std::move(block));
  }
  const int q = static_cast<int>(data.blocks.size());
  data.L = Eigen::MatrixXi(q, 0);
  data.U = Eigen::MatrixXi(q, 0);
  data.C = build_C_gaussian(model, data.blocks, 1.0, trials, seed + 1);
  data.A = Eigen::MatrixXd::Ones(m, q);
  return {Instance::create(std::move(data)), std::move(model)};
}

}  // namespace fairrank
