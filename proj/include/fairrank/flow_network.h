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

#ifndef FAIRRANK_FLOW_NETWORK_H_
#define FAIRRANK_FLOW_NETWORK_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairrank/instance.h"

namespace fairrank {

struct FlowArc {
  int from;
  int to;
  int lower;
  int upper;
};

// Integral feasible flow for arcs with lower and upper bounds where every
// node conserves flow. Arcs are explored in insertion order, so the result is
// deterministic. Returns std::nullopt when no feasible flow exists.
std::optional<std::vector<int>> feasible_flow(int num_nodes, const std::vector<FlowArc>& arcs);

// Maximum flow between two nodes of a capacitated network (Dinic).
class MaxFlow {
 public:
  explicit MaxFlow(int num_nodes);
  // Returns the arc index.
  int add_arc(int from, int to, long long capacity);
  long long run(int source, int sink);
  long long flow(int arc) const;
  // Nodes on the source side of a minimum cut after run().
  std::vector<bool> source_side(int source) const;

 private:
  struct Edge {
    int to;
    long long capacity;
  };
  bool bfs(int source, int sink);
  long long dfs(int node, int sink, long long pushed);

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<long long> original_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Layered network whose feasible flows are the fractional group-fair
// matchings: source -> item -> (minimal group, block) -> ... -> (root, block)
// -> sink, with each (group, block) node passing its flow to the parent
// group's node for the same block.
class FlowNetwork {
 public:
  int num_items() const { return num_items_; }
  int num_blocks() const { return static_cast<int>(block_sizes_.size()); }
  int num_groups() const { return static_cast<int>(group_members_.size()); }
  int num_nodes() const { return num_nodes_; }

  int source() const { return 0; }
  int sink() const { return num_nodes_ - 1; }
  int item_node(int item) const { return 1 + item; }
  int group_node(int group, int block) const {
    return 1 + num_items_ + block * num_groups() + group;
  }
  int root_node(int block) const {
    return 1 + num_items_ + num_blocks() * num_groups() + block;
  }

  const std::vector<FlowArc>& arcs() const { return arcs_; }
  int source_arc(int item) const { return source_arc_[item]; }
  int item_arc(int item, int block) const { return item_arc_[item * num_blocks() + block]; }
  // Arc leaving the (group, block) node toward its parent.
  int group_arc(int group, int block) const { return group_arc_[block * num_groups() + group]; }
  int root_arc(int block) const { return root_arc_[block]; }

  const std::vector<int>& block_sizes() const { return block_sizes_; }
  const std::vector<int>& group_members(int group) const { return group_members_[group]; }
  bool items_forced() const { return items_forced_; }

  std::string describe_node(int node) const;

 private:
  friend FlowNetwork build_network(const Instance& instance);

  int num_items_ = 0;
  int num_nodes_ = 0;
  bool items_forced_ = false;
  std::vector<int> block_sizes_;
  std::vector<std::vector<int>> group_members_;
  std::vector<std::string> group_ids_;
  std::vector<FlowArc> arcs_;
  std::vector<int> source_arc_;
  std::vector<int> item_arc_;
  std::vector<int> group_arc_;
  std::vector<int> root_arc_;
};

// Item arcs carry [1,1] on the source side when the blocks cover every item
// (a padded instance), [0,1] otherwise. Throws NetworkError when a node's
// children demand more than its upper bound allows.
FlowNetwork build_network(const Instance& instance);

}  // namespace fairrank

#endif  // FAIRRANK_FLOW_NETWORK_H_
