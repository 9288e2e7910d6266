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

#include "fairrank/decomposition.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace fairrank {
namespace {

constexpr double kEps = kIntegralityTolerance;

double snap(double value) {
  if (value <= kEps) return 0.0;
  if (value >= 1.0 - kEps) return 1.0;
  return value;
}

// Rounds values within tolerance of an integer onto it.
double snap_count(double value) {
  const double nearest = std::round(value);
  return std::abs(value - nearest) <= kEps ? nearest : value;
}

double group_count(const Eigen::MatrixXd& x, const FlowNetwork& net, int group, int block) {
  double total = 0.0;
  for (int i : net.group_members(group)) total += x(i, block);
  return total;
}

int count_tight(const Eigen::MatrixXd& x, const FlowNetwork& net) {
  int tight = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      if (x(i, j) == 0.0 || x(i, j) == 1.0) ++tight;
    }
    if (x.row(i).sum() >= 1.0 - kEps) ++tight;
  }
  for (int j = 0; j < net.num_blocks(); ++j) {
    for (int l = 0; l < net.num_groups(); ++l) {
      const FlowArc& arc = net.arcs()[net.group_arc(l, j)];
      const double s = group_count(x, net, l, j);
      if (std::abs(s - arc.lower) <= kEps) ++tight;
      if (std::abs(s - arc.upper) <= kEps) ++tight;
    }
  }
  return tight;
}

std::string describe_breach(const Eigen::MatrixXd& x, const FlowNetwork& net) {
  std::ostringstream out;
  for (int j = 0; j < net.num_blocks(); ++j) {
    for (int l = 0; l < net.num_groups(); ++l) {
      const FlowArc& arc = net.arcs()[net.group_arc(l, j)];
      const double s = group_count(x, net, l, j);
      if (s < arc.lower - kEps || s > arc.upper + kEps) {
        out << "; " << net.describe_node(net.group_node(l, j)) << " carries " << s
            << " outside [" << arc.lower << "," << arc.upper << "]";
      }
    }
    const double column = x.col(j).sum();
    if (std::abs(column - net.block_sizes()[j]) > kEps) {
      out << "; block " << j + 1 << " holds " << column << " instead of "
          << net.block_sizes()[j];
    }
  }
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double row = x.row(i).sum();
    const FlowArc& arc = net.arcs()[net.source_arc(static_cast<int>(i))];
    if (row < arc.lower - kEps || row > arc.upper + kEps) {
      out << "; item row " << i + 1 << " sums to " << row;
    }
  }
  return out.str();
}

}  // namespace

Matching vertex_oracle(const MatchingMarginal& marginal, const FlowNetwork& net) {
  const Eigen::MatrixXd& x = marginal.values();
  const int m = net.num_items();
  const int q = net.num_blocks();
  if (x.rows() != m || x.cols() != q) {
    throw std::invalid_argument("vertex_oracle: dimension mismatch");
  }
  std::vector<FlowArc> arcs = net.arcs();
  for (int i = 0; i < m; ++i) {
    FlowArc& arc = arcs[net.source_arc(i)];
    const double row = snap_count(x.row(i).sum());
    arc.lower = std::max(arc.lower, static_cast<int>(std::floor(row)));
    arc.upper = std::min(arc.upper, static_cast<int>(std::ceil(row)));
    for (int j = 0; j < q; ++j) {
      FlowArc& item = arcs[net.item_arc(i, j)];
      const double value = snap(x(i, j));
      item.lower = value == 1.0 ? 1 : 0;
      item.upper = value == 0.0 ? 0 : 1;
    }
  }
  for (int j = 0; j < q; ++j) {
    for (int l = 0; l < net.num_groups(); ++l) {
      FlowArc& arc = arcs[net.group_arc(l, j)];
      const double s = snap_count(group_count(x, net, l, j));
      arc.lower = std::max(arc.lower, static_cast<int>(std::floor(s)));
      arc.upper = std::min(arc.upper, static_cast<int>(std::ceil(s)));
    }
  }
  const auto flow = feasible_flow(net.num_nodes(), arcs);
  if (!flow) {
    throw DecompositionError("marginal lies outside the group-fair matching polytope" +
                             describe_breach(x, net));
  }
  std::vector<int> block_of(m, -1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < q; ++j) {
      if ((*flow)[net.item_arc(i, j)] == 1) block_of[i] = j;
    }
  }
  return Matching(std::move(block_of), net.block_sizes());
}

DecompositionResult decompose_matching(const MatchingMarginal& marginal, const FlowNetwork& net) {
  const int m = net.num_items();
  const int q = net.num_blocks();
  const int p = net.num_groups();
  const int cap = m * q + q * p + 1;

  Eigen::MatrixXd current = marginal.values().unaryExpr([](double v) { return snap(v); });
  int tight = count_tight(current, net);
  std::vector<PolicyTerm<Matching>> raw;
  double remaining = 1.0;
  DecompositionResult result;

  for (int iteration = 1;; ++iteration) {
    if (iteration > cap) {
      throw DecompositionError("face descent did not converge within " + std::to_string(cap) +
                               " steps");
    }
    result.iterations = iteration;
    Matching vertex = vertex_oracle(MatchingMarginal(current, net.block_sizes(), 1e-6), net);
    const Eigen::MatrixXd direction = current - vertex.to_dense();
    if (direction.cwiseAbs().maxCoeff() <= kEps) {
      raw.push_back({remaining, std::move(vertex)});
      break;
    }

    // Largest step along current - vertex that stays in the polytope.
    double step = std::numeric_limits<double>::infinity();
    // Constraints already tight stay tight at the vertex; skip them.
    auto limit = [&step](double slack, double rate) {
      if (rate > 1e-12 && slack > kEps) step = std::min(step, slack / rate);
    };
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < q; ++j) {
        limit(1.0 - current(i, j), direction(i, j));
        limit(current(i, j), -direction(i, j));
      }
      const FlowArc& arc = net.arcs()[net.source_arc(i)];
      limit(arc.upper - current.row(i).sum(), direction.row(i).sum());
      limit(current.row(i).sum() - arc.lower, -direction.row(i).sum());
    }
    for (int j = 0; j < q; ++j) {
      for (int l = 0; l < p; ++l) {
        const FlowArc& arc = net.arcs()[net.group_arc(l, j)];
        const double s = group_count(current, net, l, j);
        const double rate = group_count(direction, net, l, j);
        limit(arc.upper - s, rate);
        limit(s - arc.lower, -rate);
      }
    }
    if (!std::isfinite(step)) {
      throw DecompositionError("unbounded face-descent step");
    }
    const double alpha = step / (1.0 + step);
    raw.push_back({remaining * alpha, std::move(vertex)});
    remaining *= 1.0 - alpha;
    current = (current + step * direction).unaryExpr([](double v) { return snap(v); });

    const int now_tight = count_tight(current, net);
    if (now_tight <= tight) {
      throw DecompositionError("face descent failed to reach a smaller face");
    }
    tight = now_tight;
  }

  // Merge repeated matchings, drop negligible weights, renormalize.
  std::vector<PolicyTerm<Matching>> merged;
  for (auto& term : raw) {
    auto same = std::find_if(merged.begin(), merged.end(),
                             [&](const auto& other) { return other.object == term.object; });
    if (same != merged.end()) {
      same->weight += term.weight;
    } else {
      merged.push_back(std::move(term));
    }
  }
  std::erase_if(merged, [](const auto& term) { return term.weight < kMinimumWeight; });
  double total = 0.0;
  for (const auto& term : merged) total += term.weight;
  for (auto& term : merged) term.weight /= total;
  result.policy = Policy<Matching>(std::move(merged));
  result.residual = (result.policy.marginal() - marginal.values()).cwiseAbs().maxCoeff();
  return result;
}

bool satisfies_network_bounds(const Matching& matching, const FlowNetwork& net) {
  if (matching.num_items() != net.num_items() || matching.block_sizes() != net.block_sizes()) {
    return false;
  }
  for (int j = 0; j < net.num_blocks(); ++j) {
    for (int l = 0; l < net.num_groups(); ++l) {
      int count = 0;
      for (int i : net.group_members(l)) count += matching.block_of(i) == j;
      const FlowArc& arc = net.arcs()[net.group_arc(l, j)];
      if (count < arc.lower || count > arc.upper) return false;
    }
  }
  if (net.items_forced()) {
    for (int i = 0; i < net.num_items(); ++i) {
      if (matching.block_of(i) < 0) return false;
    }
  }
  return true;
}

}  // namespace fairrank
