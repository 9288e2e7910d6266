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

#include "fairrank/flow_network.h"

#include <algorithm>
#include <limits>
#include <queue>

namespace fairrank {

MaxFlow::MaxFlow(int num_nodes) : adjacency_(num_nodes), level_(num_nodes), cursor_(num_nodes) {}

int MaxFlow::add_arc(int from, int to, long long capacity) {
  const int index = static_cast<int>(edges_.size());
  edges_.push_back({to, capacity});
  adjacency_[from].push_back(index);
  edges_.push_back({from, 0});
  adjacency_[to].push_back(index + 1);
  original_.push_back(capacity);
  original_.push_back(0);
  return index / 2;
}

bool MaxFlow::bfs(int source, int sink) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<int> frontier;
  level_[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const int node = frontier.front();
    frontier.pop();
    for (int e : adjacency_[node]) {
      if (edges_[e].capacity > 0 && level_[edges_[e].to] < 0) {
        level_[edges_[e].to] = level_[node] + 1;
        frontier.push(edges_[e].to);
      }
    }
  }
  return level_[sink] >= 0;
}

long long MaxFlow::dfs(int node, int sink, long long pushed) {
  if (node == sink) return pushed;
  for (auto& k = cursor_[node]; k < adjacency_[node].size(); ++k) {
    const int e = adjacency_[node][k];
    Edge& edge = edges_[e];
    if (edge.capacity <= 0 || level_[edge.to] != level_[node] + 1) continue;
    const long long got = dfs(edge.to, sink, std::min(pushed, edge.capacity));
    if (got > 0) {
      edge.capacity -= got;
      edges_[e ^ 1].capacity += got;
      return got;
    }
  }
  return 0;
}

long long MaxFlow::run(int source, int sink) {
  long long total = 0;
  while (bfs(source, sink)) {
    std::fill(cursor_.begin(), cursor_.end(), 0);
    while (long long pushed = dfs(source, sink, std::numeric_limits<long long>::max())) {
      total += pushed;
    }
  }
  return total;
}

long long MaxFlow::flow(int arc) const { return original_[2 * arc] - edges_[2 * arc].capacity; }

std::vector<bool> MaxFlow::source_side(int source) const {
  std::vector<bool> seen(adjacency_.size(), false);
  std::queue<int> frontier;
  seen[source] = true;
  frontier.push(source);
  while (!frontier.empty()) {
    const int node = frontier.front();
    frontier.pop();
    for (int e : adjacency_[node]) {
      if (edges_[e].capacity > 0 && !seen[edges_[e].to]) {
        seen[edges_[e].to] = true;
        frontier.push(edges_[e].to);
      }
    }
  }
  return seen;
}

std::optional<std::vector<int>> feasible_flow(int num_nodes, const std::vector<FlowArc>& arcs) {
  const int super_source = num_nodes;
  const int super_sink = num_nodes + 1;
  MaxFlow flow(num_nodes + 2);
  std::vector<long long> balance(num_nodes, 0);
  for (const auto& arc : arcs) {
    if (arc.lower > arc.upper) return std::nullopt;
    flow.add_arc(arc.from, arc.to, arc.upper - arc.lower);
    balance[arc.to] += arc.lower;
    balance[arc.from] -= arc.lower;
  }
  long long required = 0;
  for (int node = 0; node < num_nodes; ++node) {
    if (balance[node] > 0) {
      flow.add_arc(super_source, node, balance[node]);
      required += balance[node];
    } else if (balance[node] < 0) {
      flow.add_arc(node, super_sink, -balance[node]);
    }
  }
  if (flow.run(super_source, super_sink) != required) return std::nullopt;
  std::vector<int> out(arcs.size());
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    out[a] = arcs[a].lower + static_cast<int>(flow.flow(static_cast<int>(a)));
  }
  return out;
}

std::string FlowNetwork::describe_node(int node) const {
  if (node == source()) return "source";
  if (node == sink()) return "sink";
  if (node <= num_items_) return "item " + std::to_string(node);
  const int offset = node - 1 - num_items_;
  if (offset < num_blocks() * num_groups()) {
    return "(group " + group_ids_[offset % num_groups()] + ", block " +
           std::to_string(offset / num_groups() + 1) + ")";
  }
  return "(root, block " + std::to_string(offset - num_blocks() * num_groups() + 1) + ")";
}

FlowNetwork build_network(const Instance& instance) {
  FlowNetwork net;
  const int m = instance.m();
  const int q = instance.q();
  const int p = instance.p();
  net.num_items_ = m;
  net.block_sizes_ = instance.block_sizes();
  for (int l = 0; l < p; ++l) {
    net.group_members_.push_back(instance.group(l).members);
    net.group_ids_.push_back(instance.group(l).id);
  }
  net.num_nodes_ = 1 + m + q * p + q + 1;

  int covered = 0;
  for (int size : net.block_sizes_) covered += size;
  net.items_forced_ = covered == m;

  // Children of each (group or root) must not demand more than it admits.
  std::vector<std::string> problems;
  for (int j = 0; j < q; ++j) {
    for (int parent = -1; parent < p; ++parent) {
      int demand = 0;
      for (int child : instance.child_groups(parent)) demand += instance.L()(j, child);
      const int cap = parent < 0 ? instance.block_size(j) : instance.U()(j, parent);
      if (demand > cap) {
        problems.push_back("block " + std::to_string(j + 1) + ": children of " +
                           (parent < 0 ? std::string("the root") : "group " + instance.group(parent).id) +
                           " need " + std::to_string(demand) + " > " + std::to_string(cap));
      }
    }
    for (int l = 0; l < p; ++l) {
      if (instance.L()(j, l) > instance.group_size(l)) {
        problems.push_back("block " + std::to_string(j + 1) + ": group " + instance.group(l).id +
                           " has fewer members than its lower bound");
      }
    }
  }
  if (!problems.empty()) {
    std::string message = "structurally infeasible group bounds:";
    for (const auto& problem : problems) message += "\n  " + problem;
    throw NetworkError(message);
  }

  const int forced = net.items_forced_ ? 1 : 0;
  for (int i = 0; i < m; ++i) {
    net.source_arc_.push_back(static_cast<int>(net.arcs_.size()));
    net.arcs_.push_back({net.source(), net.item_node(i), forced, 1});
  }
  net.item_arc_.resize(m * q);
  for (int i = 0; i < m; ++i) {
    const int group = instance.minimal_group(i);
    for (int j = 0; j < q; ++j) {
      const int head = group < 0 ? net.root_node(j) : net.group_node(group, j);
      net.item_arc_[i * q + j] = static_cast<int>(net.arcs_.size());
      net.arcs_.push_back({net.item_node(i), head, 0, 1});
    }
  }
  net.group_arc_.resize(q * p);
  for (int j = 0; j < q; ++j) {
    for (int l = 0; l < p; ++l) {
      const int parent = instance.parent_group(l);
      const int head = parent < 0 ? net.root_node(j) : net.group_node(parent, j);
      net.group_arc_[j * p + l] = static_cast<int>(net.arcs_.size());
      net.arcs_.push_back({net.group_node(l, j), head, instance.L()(j, l), instance.U()(j, l)});
    }
  }
  for (int j = 0; j < q; ++j) {
    net.root_arc_.push_back(static_cast<int>(net.arcs_.size()));
    const int size = instance.block_size(j);
    net.arcs_.push_back({net.root_node(j), net.sink(), size, size});
  }
  // Return arc closing the circulation.
  net.arcs_.push_back({net.sink(), net.source(), 0, m});
  return net;
}

}  // namespace fairrank
