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

#include "fairrank/birkhoff.h"

#include <algorithm>
#include <functional>

namespace fairrank {

std::vector<int> perfect_matching(const Eigen::MatrixXd& weights, double threshold) {
  const int size = static_cast<int>(weights.rows());
  std::vector<int> row_of_column(size, -1);
  std::vector<char> visited(size);
  std::function<bool(int)> augment = [&](int row) {
    for (int col = 0; col < size; ++col) {
      if (weights(row, col) <= threshold || visited[col]) continue;
      visited[col] = 1;
      if (row_of_column[col] < 0 || augment(row_of_column[col])) {
        row_of_column[col] = row;
        return true;
      }
    }
    return false;
  };
  for (int row = 0; row < size; ++row) {
    std::fill(visited.begin(), visited.end(), 0);
    if (!augment(row)) return {};
  }
  std::vector<int> column_of_row(size, -1);
  for (int col = 0; col < size; ++col) column_of_row[row_of_column[col]] = col;
  return column_of_row;
}

Eigen::MatrixXd square_pad(const Eigen::MatrixXd& D) {
  const Eigen::Index m = D.rows();
  const Eigen::Index n = D.cols();
  if (n > m) throw std::invalid_argument("square_pad: more positions than items");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  out.leftCols(n) = D;
  // Northwest-corner fill of the row deficits into the extra columns.
  Eigen::Index col = n;
  double room = 1.0;
  for (Eigen::Index i = 0; i < m && col < m; ++i) {
    double deficit = std::max(0.0, 1.0 - D.row(i).sum());
    while (deficit > 0.0 && col < m) {
      const double put = std::min(deficit, room);
      out(i, col) += put;
      deficit -= put;
      room -= put;
      if (room <= 1e-15) {
        ++col;
        room = 1.0;
      }
    }
  }
  return out;
}

Policy<RankingMatrix> birkhoff_decompose(const MarginalD& marginal) {
  const int m = marginal.rows();
  const int n = marginal.cols();
  Eigen::MatrixXd residual = square_pad(marginal.values());
  for (Eigen::Index i = 0; i < m; ++i) {
    if (std::abs(residual.row(i).sum() - 1.0) > 1e-7 ||
        std::abs(residual.col(i).sum() - 1.0) > 1e-7) {
      throw BirkhoffError("marginal is not doubly stochastic after padding");
    }
  }
  std::vector<PolicyTerm<RankingMatrix>> terms;
  double mass = 1.0;
  const int cap = n * m + 1;
  while (mass > 1e-9) {
    if (static_cast<int>(terms.size()) >= cap) {
      throw BirkhoffError("decomposition exceeded nm + 1 terms");
    }
    const std::vector<int> column_of_row = perfect_matching(residual, kSupportThreshold);
    if (column_of_row.empty()) {
      if (mass < 1e-7) break;
      throw BirkhoffError("no perfect matching on the support; marginal not doubly stochastic");
    }
    double weight = 1.0;
    for (int i = 0; i < m; ++i) weight = std::min(weight, residual(i, column_of_row[i]));
    std::vector<int> item_at(n, -1);
    for (int i = 0; i < m; ++i) {
      residual(i, column_of_row[i]) -= weight;
      if (column_of_row[i] < n) item_at[column_of_row[i]] = i;
    }
    mass -= weight;
    RankingMatrix ranking(m, std::move(item_at));
    auto same = std::find_if(terms.begin(), terms.end(),
                             [&](const auto& term) { return term.object == ranking; });
    if (same != terms.end()) {
      same->weight += weight;
    } else {
      terms.push_back({weight, std::move(ranking)});
    }
  }
  double total = 0.0;
  for (const auto& term : terms) total += term.weight;
  for (auto& term : terms) term.weight /= total;
  return Policy<RankingMatrix>(std::move(terms));
}

}  // namespace fairrank
