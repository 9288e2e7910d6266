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

#include "fairrank/lp.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fairrank/simplex.h"

namespace fairrank {
namespace {

std::string label(const char* kind, int a, int b = -1) {
  std::ostringstream out;
  out << kind << '[' << a;
  if (b >= 0) out << ',' << b;
  out << ']';
  return out.str();
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& part : parts) {
    if (!out.empty()) out += ", ";
    out += part;
  }
  return out;
}

LpProblem base_program(const Instance& instance) {
  const int m = instance.m();
  const int n = instance.n();
  const int q = instance.q();
  LpProblem problem;
  problem.m = m;
  problem.n = n;
  problem.objective.resize(m, n);
  for (int i = 0; i < m; ++i) {
    problem.item_ids.push_back(instance.original_id(i));
    for (int t = 0; t < n; ++t) problem.objective(i, t) = instance.rho()[i] * instance.v()[t];
  }
  int kept = 0;
  for (int t = 0; t < n; ++t) {
    LpRow row{{}, 1.0, 1.0, label("position", t + 1)};
    for (int i = 0; i < m; ++i) row.terms.push_back({problem.variable(i, t), 1.0});
    problem.rows.push_back(std::move(row));
    ++kept;
  }
  for (int i = 0; i < m; ++i) {
    LpRow row{{}, -kInfinity, 1.0, label("item", instance.original_id(i) + 1)};
    for (int t = 0; t < n; ++t) row.terms.push_back({problem.variable(i, t), 1.0});
    problem.rows.push_back(std::move(row));
    ++kept;
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < q; ++j) {
      const double lower = instance.C()(i, j);
      const double upper = instance.A()(i, j);
      const bool keep_lower = lower > 0.0;
      const bool keep_upper = upper < 1.0;
      if (!keep_lower && !keep_upper) continue;
      LpRow row{{}, keep_lower ? lower : -kInfinity, keep_upper ? upper : kInfinity,
                label("individual", instance.original_id(i) + 1, j + 1)};
      for (int t : instance.block(j)) row.terms.push_back({problem.variable(i, t), 1.0});
      problem.rows.push_back(std::move(row));
      kept += keep_lower + keep_upper;
    }
  }
  problem.constraints_before_pruning = n + m + 2 * m * q;
  problem.constraints_after_pruning = kept;
  return problem;
}

}  // namespace

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kNumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

LpError::LpError(LpStatus status, std::vector<std::string> rows)
    : std::runtime_error("linear program " + to_string(status) +
                         (rows.empty() ? std::string() : " (rows: " + join(rows) + ")")),
      status_(status),
      rows_(std::move(rows)) {}

LpProblem build_individual_program(const Instance& instance) {
  return base_program(instance);
}

LpProblem build_fair_program(const Instance& instance) {
  LpProblem problem = base_program(instance);
  problem.has_group_rows = true;
  const int q = instance.q();
  const int p = instance.p();
  problem.constraints_before_pruning += 2 * q * p;
  for (int j = 0; j < q; ++j) {
    for (int l = 0; l < p; ++l) {
      const int lower = instance.L()(j, l);
      const int upper = instance.U()(j, l);
      const int capacity = std::min(instance.block_size(j), instance.group_size(l));
      const bool keep_lower = lower > 0;
      const bool keep_upper = upper < capacity;
      if (!keep_lower && !keep_upper) continue;
      LpRow row{{},
                keep_lower ? static_cast<double>(lower) : -kInfinity,
                keep_upper ? static_cast<double>(upper) : kInfinity,
                "group[" + instance.group(l).id + "," + std::to_string(j + 1) + "]"};
      for (int i : instance.group(l).members) {
        for (int t : instance.block(j)) row.terms.push_back({problem.variable(i, t), 1.0});
      }
      problem.rows.push_back(std::move(row));
      problem.constraints_after_pruning += keep_lower + keep_upper;
    }
  }
  return problem;
}

LpSolution solve(const LpProblem& problem) {
  LinearProgram lp;
  for (int i = 0; i < problem.m; ++i) {
    for (int t = 0; t < problem.n; ++t) lp.add_column(problem.objective(i, t), 0.0, 1.0);
  }
  for (const auto& row : problem.rows) lp.add_row(row.terms, row.lower, row.upper);

  const SimplexResult result = solve_simplex(lp);
  LpSolution solution;
  solution.iterations = result.iterations;
  switch (result.status) {
    case SimplexStatus::kOptimal: {
      solution.status = LpStatus::kOptimal;
      solution.vertex = result.basic;
      solution.D.resize(problem.m, problem.n);
      for (int i = 0; i < problem.m; ++i) {
        for (int t = 0; t < problem.n; ++t) {
          double x = result.x[problem.variable(i, t)];
          if (std::abs(x) < 1e-12) x = 0.0;
          solution.D(i, t) = x;
        }
      }
      solution.objective = (problem.objective.array() * solution.D.array()).sum();
      break;
    }
    case SimplexStatus::kInfeasible:
      solution.status = LpStatus::kInfeasible;
      for (int r : result.infeasible_rows) {
        solution.infeasible_rows.push_back(problem.rows[r].label);
      }
      break;
    case SimplexStatus::kUnbounded:
    case SimplexStatus::kIterationLimit:
      solution.status = LpStatus::kNumericalFailure;
      break;
  }
  return solution;
}

LpSolution solve_or_throw(const LpProblem& problem) {
  LpSolution solution = solve(problem);
  if (solution.status != LpStatus::kOptimal) {
    throw LpError(solution.status, solution.infeasible_rows);
  }
  return solution;
}

void write_lp_format(const LpProblem& problem, std::ostream& out) {
  auto name = [&](int var) {
    const int i = var / problem.n;
    const int t = var % problem.n;
    return "x_" + std::to_string(problem.item_ids[i] + 1) + "_" + std::to_string(t + 1);
  };
  auto sanitize = [](std::string s) {
    for (char& c : s) {
      if (c == '[' || c == ']' || c == ',' || c == ' ') c = '_';
    }
    while (!s.empty() && s.back() == '_') s.pop_back();
    return s;
  };
  auto form = [&](const LpRow& row) {
    std::ostringstream expr;
    bool first = true;
    for (const auto& [var, coef] : row.terms) {
      expr << (first ? "" : " + ");
      if (coef != 1.0) expr << coef << ' ';
      expr << name(var);
      first = false;
    }
    return expr.str();
  };
  out.precision(17);
  out << "\\ fairrank marginal program: " << problem.m << " items, " << problem.n
      << " positions\nMaximize\n obj:";
  bool first = true;
  for (int i = 0; i < problem.m; ++i) {
    for (int t = 0; t < problem.n; ++t) {
      const double c = problem.objective(i, t);
      if (c == 0.0) continue;
      out << (first ? " " : " + ") << c << ' ' << name(problem.variable(i, t));
      first = false;
    }
  }
  if (first) out << " 0 " << name(0);
  out << "\nSubject To\n";
  for (const auto& row : problem.rows) {
    const std::string base = sanitize(row.label);
    if (row.lower == row.upper) {
      out << ' ' << base << ": " << form(row) << " = " << row.lower << '\n';
      continue;
    }
    if (std::isfinite(row.lower)) {
      out << ' ' << base << "_lo: " << form(row) << " >= " << row.lower << '\n';
    }
    if (std::isfinite(row.upper)) {
      out << ' ' << base << "_hi: " << form(row) << " <= " << row.upper << '\n';
    }
  }
  out << "Bounds\n";
  for (int var = 0; var < problem.num_variables(); ++var) {
    out << " 0 <= " << name(var) << " <= 1\n";
  }
  out << "End\n";
}

double max_row_violation(const LpProblem& problem, const Eigen::MatrixXd& D) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < D.rows(); ++i) {
    for (Eigen::Index t = 0; t < D.cols(); ++t) {
      worst = std::max({worst, -D(i, t), D(i, t) - 1.0});
    }
  }
  for (const auto& row : problem.rows) {
    double activity = 0.0;
    for (const auto& [var, coef] : row.terms) {
      activity += coef * D(var / problem.n, var % problem.n);
    }
    worst = std::max({worst, row.lower - activity, activity - row.upper});
  }
  return worst;
}

}  // namespace fairrank
