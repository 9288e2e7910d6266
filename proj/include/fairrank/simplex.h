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

#ifndef FAIRRANK_SIMPLEX_H_
#define FAIRRANK_SIMPLEX_H_

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace fairrank {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// maximize c^T x  s.t.  row_lower <= A x <= row_upper,  col_lower <= x <= col_upper.
// Every column must have at least one finite bound.
struct LinearProgram {
  using Entry = std::pair<int, double>;  // (column, coefficient)

  int num_cols = 0;
  std::vector<double> objective;
  std::vector<double> col_lower;
  std::vector<double> col_upper;
  std::vector<std::vector<Entry>> rows;
  std::vector<double> row_lower;
  std::vector<double> row_upper;

  int add_column(double cost, double lower, double upper);
  int add_row(std::vector<Entry> entries, double lower, double upper);
  int num_rows() const { return static_cast<int>(rows.size()); }
};

enum class SimplexStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string to_string(SimplexStatus status);

struct SimplexOptions {
  int max_iterations = 500000;
  double feasibility_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  double pivot_tolerance = 1e-9;
  int refactor_interval = 100;
  // Consecutive degenerate pivots before switching to smallest-index pricing.
  int degenerate_limit = 30;
};

struct SimplexResult {
  SimplexStatus status = SimplexStatus::kIterationLimit;
  std::vector<double> x;
  std::vector<double> row_activity;
  double objective = 0.0;
  int iterations = 0;
  // Rows still violated at the end of phase one.
  std::vector<int> infeasible_rows;
  // True when x is a basic solution of the bounded-variable system.
  bool basic = false;
};

// Two-phase bounded-variable revised simplex with an explicit dense basis
// inverse, refactored periodically.
SimplexResult solve_simplex(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace fairrank

#endif  // FAIRRANK_SIMPLEX_H_
