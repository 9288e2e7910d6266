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

#ifndef FAIRRANK_LP_H_
#define FAIRRANK_LP_H_

#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fairrank/instance.h"

namespace fairrank {

// A ranged linear form over the marginal entries D(i,t), flattened as i*n+t.
struct LpRow {
  std::vector<std::pair<int, double>> terms;
  double lower;
  double upper;
  std::string label;
};

struct LpProblem {
  int m = 0;
  int n = 0;
  Eigen::MatrixXd objective;  // rho_i * v_t, maximized
  std::vector<LpRow> rows;
  // One-sided constraints before vacuous sides are dropped:
  // n + m + 2mq (+ 2qp with group rows).
  int constraints_before_pruning = 0;
  int constraints_after_pruning = 0;
  bool has_group_rows = false;
  // Original item id of each internal row index, for labels.
  std::vector<int> item_ids;

  int num_variables() const { return m * n; }
  int variable(int item, int position) const { return item * n + position; }
};

enum class LpStatus { kOptimal, kInfeasible, kNumericalFailure };
std::string to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kNumericalFailure;
  Eigen::MatrixXd D;  // m x n, meaningful when optimal
  double objective = 0.0;
  bool vertex = false;
  int iterations = 0;
  // Labels of the rows certifying infeasibility.
  std::vector<std::string> infeasible_rows;
};

class LpError : public std::runtime_error {
 public:
  LpError(LpStatus status, std::vector<std::string> rows);
  LpStatus status() const { return status_; }
  const std::vector<std::string>& rows() const { return rows_; }

 private:
  LpStatus status_;
  std::vector<std::string> rows_;
};

// Individual fairness plus ranking-marginal rows.
LpProblem build_individual_program(const Instance& instance);
// Adds the per-(block, group) count rows.
LpProblem build_fair_program(const Instance& instance);

LpSolution solve(const LpProblem& problem);
// The optimal marginal, or LpError.
LpSolution solve_or_throw(const LpProblem& problem);

// CPLEX LP text format; ranged rows are split into two inequalities.
void write_lp_format(const LpProblem& problem, std::ostream& out);

// Largest violation of any row or of the [0,1] box by a marginal.
double max_row_violation(const LpProblem& problem, const Eigen::MatrixXd& D);

}  // namespace fairrank

#endif  // FAIRRANK_LP_H_
