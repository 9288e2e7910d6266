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

#ifndef FAIRRANK_INSTANCE_H_
#define FAIRRANK_INSTANCE_H_

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fairrank {

// Absolute tolerance used for every marginal-sum invariant in the library.
inline constexpr double kDefaultMarginalTolerance = 1e-8;
double marginal_tolerance();
void set_marginal_tolerance(double tolerance);

struct Violation {
  std::string kind;
  std::string message;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

struct Group {
  std::string id;
  std::vector<int> members;  // 0-indexed items
};

// Raw instance description. Items, positions and blocks are 0-indexed.
struct InstanceData {
  int m = 0;
  int n = 0;
  std::vector<double> rho;
  std::vector<double> v;
  std::vector<std::vector<int>> blocks;
  std::vector<Group> groups;
  Eigen::MatrixXi L;  // q x p
  Eigen::MatrixXi U;  // q x p
  Eigen::MatrixXd C;  // m x q
  Eigen::MatrixXd A;  // m x q
  // Source index of each item; empty means identity.
  std::vector<int> item_ids;
  // Positions at or beyond this index are padding; -1 means none.
  int real_positions = -1;
};

// Every violated structural invariant, with indices. Empty iff valid.
std::vector<Violation> validate(const InstanceData& data);

// A validated, immutable instance. Items are stored in nonincreasing order of
// utility (ties keep source order); `original_id` maps back to the source.
class Instance {
 public:
  // Throws ValidationError listing every violation.
  static Instance create(InstanceData data);

  int m() const { return data_.m; }
  int n() const { return data_.n; }
  int q() const { return static_cast<int>(data_.blocks.size()); }
  int p() const { return static_cast<int>(data_.groups.size()); }

  const std::vector<double>& rho() const { return data_.rho; }
  const std::vector<double>& v() const { return data_.v; }
  const std::vector<std::vector<int>>& blocks() const { return data_.blocks; }
  std::span<const int> block(int j) const { return data_.blocks[j]; }
  int block_size(int j) const {
    return static_cast<int>(data_.blocks[j].size());
  }
  std::vector<int> block_sizes() const;
  int first_position(int j) const { return data_.blocks[j].front(); }
  int block_of_position(int position) const {
    return block_of_position_[position];
  }
  const std::vector<Group>& groups() const { return data_.groups; }
  const Group& group(int l) const { return data_.groups[l]; }
  const Eigen::MatrixXi& L() const { return data_.L; }
  const Eigen::MatrixXi& U() const { return data_.U; }
  const Eigen::MatrixXd& C() const { return data_.C; }
  const Eigen::MatrixXd& A() const { return data_.A; }

  int original_id(int item) const { return data_.item_ids[item]; }
  int internal_index(int original_id) const {
    return internal_index_[original_id];
  }
  int real_positions() const { return data_.real_positions; }
  bool is_padding(int position) const {
    return position >= data_.real_positions;
  }

  // Laminar structure. -1 denotes the implicit universe group.
  int parent_group(int l) const { return parent_group_[l]; }
  int minimal_group(int item) const { return minimal_group_[item]; }
  bool in_group(int item, int l) const { return membership_(item, l) != 0; }
  int group_size(int l) const {
    return static_cast<int>(data_.groups[l].members.size());
  }
  // Groups containing `item`, innermost first.
  std::vector<int> group_chain(int item) const;
  // Groups whose parent is `l` (-1 for top-level groups).
  std::vector<int> child_groups(int l) const;

  // Internal (utility-sorted) representation.
  const InstanceData& data() const { return data_; }
  // The same instance with items back in source order.
  InstanceData source_order_data() const;

 private:
  explicit Instance(InstanceData data);

  InstanceData data_;
  std::vector<int> internal_index_;
  std::vector<int> block_of_position_;
  std::vector<int> parent_group_;
  std::vector<int> minimal_group_;
  Eigen::Matrix<char, Eigen::Dynamic, Eigen::Dynamic> membership_;
};

// A deterministic ranking: exactly one item per position, items distinct.
class RankingMatrix {
 public:
  RankingMatrix(int num_items, std::vector<int> item_at_position);
  // Throws std::invalid_argument unless entries are 0/1 with unit column sums
  // and row sums at most one.
  static RankingMatrix from_dense(const Eigen::MatrixXd& entries);

  int num_items() const { return num_items_; }
  int num_positions() const { return static_cast<int>(item_at_.size()); }
  int item_at(int position) const { return item_at_[position]; }
  // -1 when the item is not ranked.
  int position_of(int item) const { return position_of_[item]; }
  const std::vector<int>& items() const { return item_at_; }
  Eigen::MatrixXd to_dense() const;

  friend bool operator==(const RankingMatrix& a, const RankingMatrix& b) {
    return a.num_items_ == b.num_items_ && a.item_at_ == b.item_at_;
  }

 private:
  int num_items_;
  std::vector<int> item_at_;
  std::vector<int> position_of_;
};

// An assignment of items to blocks: row sums <= 1, column j sums to |B_j|.
class Matching {
 public:
  Matching(std::vector<int> block_of_item, std::vector<int> block_sizes);
  static Matching from_dense(const Eigen::MatrixXd& entries,
                             std::vector<int> block_sizes);

  int num_items() const { return static_cast<int>(block_of_.size()); }
  int num_blocks() const { return static_cast<int>(block_sizes_.size()); }
  // -1 when the item is unmatched.
  int block_of(int item) const { return block_of_[item]; }
  int block_size(int j) const { return block_sizes_[j]; }
  const std::vector<int>& block_sizes() const { return block_sizes_; }
  Eigen::MatrixXd to_dense() const;

  friend bool operator==(const Matching& a, const Matching& b) {
    return a.block_of_ == b.block_of_ && a.block_sizes_ == b.block_sizes_;
  }

 private:
  std::vector<int> block_of_;
  std::vector<int> block_sizes_;
};

// Fractional item-by-position marginal.
class MarginalD {
 public:
  MarginalD() = default;
  // Throws std::invalid_argument when entries leave [0,1] or the column/row
  // sum invariants fail by more than `tolerance`.
  explicit MarginalD(Eigen::MatrixXd values,
                     double tolerance = marginal_tolerance());
  const Eigen::MatrixXd& values() const { return values_; }
  double operator()(int i, int t) const { return values_(i, t); }
  int rows() const { return static_cast<int>(values_.rows()); }
  int cols() const { return static_cast<int>(values_.cols()); }

 private:
  Eigen::MatrixXd values_;
};

// Fractional item-by-block marginal.
class MatchingMarginal {
 public:
  MatchingMarginal() = default;
  MatchingMarginal(Eigen::MatrixXd values, std::vector<int> block_sizes,
                   double tolerance = marginal_tolerance());
  const Eigen::MatrixXd& values() const { return values_; }
  double operator()(int i, int j) const { return values_(i, j); }
  const std::vector<int>& block_sizes() const { return block_sizes_; }
  int rows() const { return static_cast<int>(values_.rows()); }
  int cols() const { return static_cast<int>(values_.cols()); }

 private:
  Eigen::MatrixXd values_;
  std::vector<int> block_sizes_;
};

template <class X>
struct PolicyTerm {
  double weight;
  X object;
};

// A finitely supported distribution over rankings or matchings.
template <class X>
class Policy {
 public:
  Policy() = default;
  explicit Policy(std::vector<PolicyTerm<X>> terms) : terms_(std::move(terms)) {
    double total = 0.0;
    for (const auto& term : terms_) {
      if (!(term.weight > 0.0)) {
        throw std::invalid_argument("policy weights must be positive");
      }
      total += term.weight;
    }
    if (terms_.empty() || std::abs(total - 1.0) > 1e-9) {
      throw std::invalid_argument("policy weights must sum to 1");
    }
  }

  const std::vector<PolicyTerm<X>>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  // Sum of weight * dense(object).
  Eigen::MatrixXd marginal() const {
    Eigen::MatrixXd total = terms_.front().object.to_dense() * 0.0;
    for (const auto& term : terms_) total += term.weight * term.object.to_dense();
    return total;
  }

 private:
  std::vector<PolicyTerm<X>> terms_;
};

// rho^T R v. Throws std::invalid_argument on a dimension mismatch.
double utility(const RankingMatrix& ranking, std::span<const double> rho,
               std::span<const double> v);
// rho^T D v for a fractional marginal.
double utility(const Eigen::MatrixXd& marginal, std::span<const double> rho,
               std::span<const double> v);
// Utility with padding positions of `instance` masked out.
double utility(const RankingMatrix& ranking, const Instance& instance);

// Dense DCG discounts 1/log2(1+j), j = 1..n.
std::vector<double> dcg_discounts(int n);

}  // namespace fairrank

#endif  // FAIRRANK_INSTANCE_H_
