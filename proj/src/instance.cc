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

#include "fairrank/instance.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>

namespace fairrank {
namespace {

std::atomic<double> g_marginal_tolerance{kDefaultMarginalTolerance};

std::string join_messages(const std::vector<Violation>& violations) {
  std::ostringstream out;
  out << "invalid instance (" << violations.size() << " violation"
      << (violations.size() == 1 ? "" : "s") << ")";
  for (const auto& violation : violations) {
    out << "\n  [" << violation.kind << "] " << violation.message;
  }
  return out.str();
}

template <class... Args>
std::string cat(const Args&... args) {
  std::ostringstream out;
  (out << ... << args);
  return out.str();
}

// Relation between two sorted member lists.
enum class SetRelation { kDisjoint, kSubset, kSuperset, kEqual, kCrossing };

SetRelation relate(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(common));
  if (common.empty()) return SetRelation::kDisjoint;
  const bool a_in_b = common.size() == a.size();
  const bool b_in_a = common.size() == b.size();
  if (a_in_b && b_in_a) return SetRelation::kEqual;
  if (a_in_b) return SetRelation::kSubset;
  if (b_in_a) return SetRelation::kSuperset;
  return SetRelation::kCrossing;
}

}  // namespace

double marginal_tolerance() { return g_marginal_tolerance.load(); }

void set_marginal_tolerance(double tolerance) {
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("tolerance must be positive");
  }
  g_marginal_tolerance.store(tolerance);
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(join_messages(violations)),
      violations_(std::move(violations)) {}

std::vector<Violation> validate(const InstanceData& data) {
  std::vector<Violation> out;
  auto add = [&out](std::string kind, std::string message) {
    out.push_back({std::move(kind), std::move(message)});
  };

  const int m = data.m;
  const int n = data.n;
  if (m < 1 || n < 1) add("dimension", cat("need m >= 1 and n >= 1, got m=", m, " n=", n));
  if (n > m) add("dimension", cat("n=", n, " exceeds m=", m));
  if (static_cast<int>(data.rho.size()) != m) {
    add("dimension", cat("rho has ", data.rho.size(), " entries, expected ", m));
  }
  for (std::size_t i = 0; i < data.rho.size(); ++i) {
    if (!std::isfinite(data.rho[i]) || data.rho[i] < 0.0) {
      add("utility", cat("rho[", i + 1, "]=", data.rho[i], " must be finite and nonnegative"));
    }
  }

  if (static_cast<int>(data.v.size()) != n) {
    add("dimension", cat("v has ", data.v.size(), " entries, expected ", n));
  } else if (n >= 1) {
    if (!(data.v[0] > 0.0)) add("discount", cat("v[1]=", data.v[0], " must be positive"));
    for (int t = 0; t < n; ++t) {
      if (!std::isfinite(data.v[t]) || data.v[t] < 0.0) {
        add("discount", cat("v[", t + 1, "]=", data.v[t], " must be finite and nonnegative"));
      }
      if (t > 0 && data.v[t] > data.v[t - 1]) {
        add("discount", cat("v not nonincreasing at position ", t + 1, ": ",
                            data.v[t - 1], " < ", data.v[t]));
      }
    }
  }

  // Blocks: disjoint, covering [n], listed by increasing first position.
  const int q = static_cast<int>(data.blocks.size());
  if (q == 0) add("block", "at least one block is required");
  std::vector<int> owner(std::max(n, 0), -1);
  int previous_first = -1;
  for (int j = 0; j < q; ++j) {
    const auto& block = data.blocks[j];
    if (block.empty()) {
      add("block", cat("block ", j + 1, " is empty"));
      continue;
    }
    if (!std::is_sorted(block.begin(), block.end())) {
      add("block", cat("block ", j + 1, " positions are not sorted"));
    }
    for (int t : block) {
      if (t < 0 || t >= n) {
        add("block", cat("block ", j + 1, " has position ", t + 1, " outside 1..", n));
      } else if (owner[t] != -1) {
        add("block", cat("position ", t + 1, " is in blocks ", owner[t] + 1, " and ", j + 1));
      } else {
        owner[t] = j;
      }
    }
    const int first = *std::min_element(block.begin(), block.end());
    if (first < previous_first) {
      add("block", cat("block ", j + 1, " starts before block ", j));
    }
    previous_first = first;
  }
  for (int t = 0; t < n; ++t) {
    if (owner[t] == -1) add("block", cat("position ", t + 1, " belongs to no block"));
  }

  // Groups: valid members and a laminar family.
  const int p = static_cast<int>(data.groups.size());
  std::vector<std::vector<int>> sorted_members(p);
  for (int l = 0; l < p; ++l) {
    auto members = data.groups[l].members;
    std::sort(members.begin(), members.end());
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (members[k] < 0 || members[k] >= m) {
        add("group", cat("group ", data.groups[l].id, " has item ", members[k] + 1,
                         " outside 1..", m));
      }
      if (k > 0 && members[k] == members[k - 1]) {
        add("group", cat("group ", data.groups[l].id, " lists item ", members[k] + 1, " twice"));
      }
    }
    sorted_members[l] = std::move(members);
  }
  for (int a = 0; a < p; ++a) {
    for (int b = a + 1; b < p; ++b) {
      if (relate(sorted_members[a], sorted_members[b]) == SetRelation::kCrossing) {
        add("laminarity", cat("groups ", data.groups[a].id, " and ", data.groups[b].id,
                              " overlap without nesting"));
      }
    }
  }

  // Bound matrices.
  if (data.L.rows() != q || data.L.cols() != p || data.U.rows() != q ||
      data.U.cols() != p) {
    add("dimension", cat("L and U must be ", q, "x", p));
  } else {
    for (int j = 0; j < q; ++j) {
      for (int l = 0; l < p; ++l) {
        if (data.L(j, l) < 0 || data.L(j, l) > data.U(j, l)) {
          add("bound-order", cat("need 0 <= L <= U at block ", j + 1, ", group ",
                                 l + 1, ": L=", data.L(j, l), " U=", data.U(j, l)));
        }
      }
    }
  }
  if (data.C.rows() != m || data.C.cols() != q || data.A.rows() != m ||
      data.A.cols() != q) {
    add("dimension", cat("C and A must be ", m, "x", q));
  } else {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < q; ++j) {
        const double c = data.C(i, j);
        const double a = data.A(i, j);
        if (!(c >= 0.0 && c <= a && a <= 1.0)) {
          add("individual-bound", cat("need 0 <= C <= A <= 1 at item ", i + 1,
                                      ", block ", j + 1, ": C=", c, " A=", a));
        }
      }
    }
  }

  if (!data.item_ids.empty()) {
    std::vector<int> ids = data.item_ids;
    std::sort(ids.begin(), ids.end());
    bool permutation = static_cast<int>(ids.size()) == m;
    for (int i = 0; permutation && i < m; ++i) permutation = ids[i] == i;
    if (!permutation) add("dimension", "item ids must be a permutation of 1..m");
  }
  if (data.real_positions < -1 || data.real_positions > n) {
    add("dimension", cat("real position count ", data.real_positions, " outside 0..", n));
  }
  return out;
}

Instance Instance::create(InstanceData data) {
  auto violations = validate(data);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return Instance(std::move(data));
}

Instance::Instance(InstanceData data) {
  const int m = data.m;
  const int q = static_cast<int>(data.blocks.size());
  const int p = static_cast<int>(data.groups.size());
  if (data.item_ids.empty()) {
    data.item_ids.resize(m);
    std::iota(data.item_ids.begin(), data.item_ids.end(), 0);
  }
  if (data.real_positions < 0) data.real_positions = data.n;

  // Stable sort by nonincreasing utility, ties by source id.
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (data.rho[a] != data.rho[b]) return data.rho[a] > data.rho[b];
    return data.item_ids[a] < data.item_ids[b];
  });
  std::vector<int> new_index(m);
  for (int k = 0; k < m; ++k) new_index[order[k]] = k;

  data_ = data;
  for (int k = 0; k < m; ++k) {
    data_.rho[k] = data.rho[order[k]];
    data_.item_ids[k] = data.item_ids[order[k]];
    data_.C.row(k) = data.C.row(order[k]);
    data_.A.row(k) = data.A.row(order[k]);
  }
  for (auto& group : data_.groups) {
    for (int& member : group.members) member = new_index[member];
    std::sort(group.members.begin(), group.members.end());
  }

  internal_index_.assign(m, -1);
  for (int k = 0; k < m; ++k) internal_index_[data_.item_ids[k]] = k;

  block_of_position_.assign(data_.n, -1);
  for (int j = 0; j < q; ++j) {
    for (int t : data_.blocks[j]) block_of_position_[t] = j;
  }

  membership_ = Eigen::Matrix<char, Eigen::Dynamic, Eigen::Dynamic>::Zero(m, p);
  for (int l = 0; l < p; ++l) {
    for (int member : data_.groups[l].members) membership_(member, l) = 1;
  }

  // Parent = smallest strict container; identical sets nest by index.
  auto contains = [&](int outer, int inner) {
    const auto rel = relate(data_.groups[inner].members, data_.groups[outer].members);
    if (rel == SetRelation::kSubset) return true;
    if (rel == SetRelation::kEqual) return outer < inner;
    // Empty groups nest under the universe.
    return false;
  };
  parent_group_.assign(p, -1);
  for (int l = 0; l < p; ++l) {
    for (int k = 0; k < p; ++k) {
      if (k == l || !contains(k, l)) continue;
      const int current = parent_group_[l];
      if (current == -1 || contains(current, k)) parent_group_[l] = k;
    }
  }

  minimal_group_.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    for (int l = 0; l < p; ++l) {
      if (!membership_(i, l)) continue;
      const int current = minimal_group_[i];
      if (current == -1 || contains(current, l)) minimal_group_[i] = l;
    }
  }
}

std::vector<int> Instance::block_sizes() const {
  std::vector<int> sizes(q());
  for (int j = 0; j < q(); ++j) sizes[j] = block_size(j);
  return sizes;
}

std::vector<int> Instance::group_chain(int item) const {
  std::vector<int> chain;
  for (int l = minimal_group_[item]; l != -1; l = parent_group_[l]) {
    chain.push_back(l);
  }
  return chain;
}

std::vector<int> Instance::child_groups(int l) const {
  std::vector<int> children;
  for (int k = 0; k < p(); ++k) {
    if (parent_group_[k] == l) children.push_back(k);
  }
  return children;
}

InstanceData Instance::source_order_data() const {
  InstanceData out = data_;
  const int m = data_.m;
  for (int k = 0; k < m; ++k) {
    const int source = data_.item_ids[k];
    out.rho[source] = data_.rho[k];
    out.C.row(source) = data_.C.row(k);
    out.A.row(source) = data_.A.row(k);
  }
  for (auto& group : out.groups) {
    for (int& member : group.members) member = data_.item_ids[member];
    std::sort(group.members.begin(), group.members.end());
  }
  out.item_ids.clear();
  if (out.real_positions == out.n) out.real_positions = -1;
  return out;
}

RankingMatrix::RankingMatrix(int num_items, std::vector<int> item_at_position)
    : num_items_(num_items),
      item_at_(std::move(item_at_position)),
      position_of_(num_items, -1) {
  if (static_cast<int>(item_at_.size()) > num_items_) {
    throw std::invalid_argument("ranking has more positions than items");
  }
  for (int t = 0; t < num_positions(); ++t) {
    const int item = item_at_[t];
    if (item < 0 || item >= num_items_) {
      throw std::invalid_argument(cat("ranking position ", t + 1, " holds invalid item ", item + 1));
    }
    if (position_of_[item] != -1) {
      throw std::invalid_argument(cat("item ", item + 1, " ranked twice"));
    }
    position_of_[item] = t;
  }
}

RankingMatrix RankingMatrix::from_dense(const Eigen::MatrixXd& entries) {
  std::vector<int> item_at(entries.cols(), -1);
  for (Eigen::Index t = 0; t < entries.cols(); ++t) {
    for (Eigen::Index i = 0; i < entries.rows(); ++i) {
      const double x = entries(i, t);
      if (x != 0.0 && x != 1.0) {
        throw std::invalid_argument("ranking entries must be 0 or 1");
      }
      if (x == 1.0) {
        if (item_at[t] != -1) {
          throw std::invalid_argument(cat("column ", t + 1, " sums to more than 1"));
        }
        item_at[t] = static_cast<int>(i);
      }
    }
    if (item_at[t] == -1) {
      throw std::invalid_argument(cat("column ", t + 1, " is empty"));
    }
  }
  return RankingMatrix(static_cast<int>(entries.rows()), std::move(item_at));
}

Eigen::MatrixXd RankingMatrix::to_dense() const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(num_items_, num_positions());
  for (int t = 0; t < num_positions(); ++t) out(item_at_[t], t) = 1.0;
  return out;
}

Matching::Matching(std::vector<int> block_of_item, std::vector<int> block_sizes)
    : block_of_(std::move(block_of_item)), block_sizes_(std::move(block_sizes)) {
  std::vector<int> counts(block_sizes_.size(), 0);
  for (std::size_t i = 0; i < block_of_.size(); ++i) {
    const int j = block_of_[i];
    if (j == -1) continue;
    if (j < 0 || j >= num_blocks()) {
      throw std::invalid_argument(cat("item ", i + 1, " matched to invalid block ", j + 1));
    }
    ++counts[j];
  }
  for (int j = 0; j < num_blocks(); ++j) {
    if (counts[j] != block_sizes_[j]) {
      throw std::invalid_argument(cat("block ", j + 1, " holds ", counts[j],
                                      " items, expected ", block_sizes_[j]));
    }
  }
}

Matching Matching::from_dense(const Eigen::MatrixXd& entries,
                              std::vector<int> block_sizes) {
  std::vector<int> block_of(entries.rows(), -1);
  for (Eigen::Index i = 0; i < entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < entries.cols(); ++j) {
      const double x = entries(i, j);
      if (x != 0.0 && x != 1.0) {
        throw std::invalid_argument("matching entries must be 0 or 1");
      }
      if (x == 1.0) {
        if (block_of[i] != -1) {
          throw std::invalid_argument(cat("row ", i + 1, " sums to more than 1"));
        }
        block_of[i] = static_cast<int>(j);
      }
    }
  }
  return Matching(std::move(block_of), std::move(block_sizes));
}

Eigen::MatrixXd Matching::to_dense() const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(num_items(), num_blocks());
  for (int i = 0; i < num_items(); ++i) {
    if (block_of_[i] != -1) out(i, block_of_[i]) = 1.0;
  }
  return out;
}

MarginalD::MarginalD(Eigen::MatrixXd values, double tolerance)
    : values_(std::move(values)) {
  if (values_.size() > 0 &&
      (values_.minCoeff() < -tolerance || values_.maxCoeff() > 1.0 + tolerance)) {
    throw std::invalid_argument("marginal entries must lie in [0,1]");
  }
  for (Eigen::Index t = 0; t < values_.cols(); ++t) {
    if (std::abs(values_.col(t).sum() - 1.0) > tolerance) {
      throw std::invalid_argument(cat("marginal column ", t + 1, " sums to ",
                                      values_.col(t).sum()));
    }
  }
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    if (values_.row(i).sum() > 1.0 + tolerance) {
      throw std::invalid_argument(cat("marginal row ", i + 1, " sums to ",
                                      values_.row(i).sum()));
    }
  }
}

MatchingMarginal::MatchingMarginal(Eigen::MatrixXd values,
                                   std::vector<int> block_sizes,
                                   double tolerance)
    : values_(std::move(values)), block_sizes_(std::move(block_sizes)) {
  if (static_cast<Eigen::Index>(block_sizes_.size()) != values_.cols()) {
    throw std::invalid_argument("one block size per column is required");
  }
  if (values_.size() > 0 &&
      (values_.minCoeff() < -tolerance || values_.maxCoeff() > 1.0 + tolerance)) {
    throw std::invalid_argument("matching marginal entries must lie in [0,1]");
  }
  for (Eigen::Index j = 0; j < values_.cols(); ++j) {
    if (std::abs(values_.col(j).sum() - block_sizes_[j]) > tolerance) {
      throw std::invalid_argument(cat("matching marginal column ", j + 1, " sums to ",
                                      values_.col(j).sum(), ", expected ",
                                      block_sizes_[j]));
    }
  }
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    if (values_.row(i).sum() > 1.0 + tolerance) {
      throw std::invalid_argument(cat("matching marginal row ", i + 1, " sums to ",
                                      values_.row(i).sum()));
    }
  }
}

double utility(const RankingMatrix& ranking, std::span<const double> rho,
               std::span<const double> v) {
  if (static_cast<int>(rho.size()) != ranking.num_items() ||
      static_cast<int>(v.size()) != ranking.num_positions()) {
    throw std::invalid_argument("utility: dimension mismatch");
  }
  double total = 0.0;
  for (int t = 0; t < ranking.num_positions(); ++t) {
    total += rho[ranking.item_at(t)] * v[t];
  }
  return total;
}

double utility(const Eigen::MatrixXd& marginal, std::span<const double> rho,
               std::span<const double> v) {
  if (static_cast<Eigen::Index>(rho.size()) != marginal.rows() ||
      static_cast<Eigen::Index>(v.size()) != marginal.cols()) {
    throw std::invalid_argument("utility: dimension mismatch");
  }
  const Eigen::Map<const Eigen::VectorXd> r(rho.data(), rho.size());
  const Eigen::Map<const Eigen::VectorXd> w(v.data(), v.size());
  return r.dot(marginal * w);
}

double utility(const RankingMatrix& ranking, const Instance& instance) {
  if (ranking.num_items() != instance.m()) {
    throw std::invalid_argument("utility: dimension mismatch");
  }
  double total = 0.0;
  const int limit = std::min(ranking.num_positions(), instance.real_positions());
  for (int t = 0; t < limit; ++t) {
    total += instance.rho()[ranking.item_at(t)] * instance.v()[t];
  }
  return total;
}

std::vector<double> dcg_discounts(int n) {
  std::vector<double> v(n);
  for (int j = 1; j <= n; ++j) v[j - 1] = 1.0 / std::log2(1.0 + j);
  return v;
}

}  // namespace fairrank
