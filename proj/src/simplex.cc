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

#include "fairrank/simplex.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace fairrank {
namespace {

enum class State : char { kBasic, kLower, kUpper, kZero };

class Solver {
 public:
  Solver(const LinearProgram& lp, const SimplexOptions& options)
      : options_(options), n_(lp.num_cols), m_(lp.num_rows()) {
    const int total = n_ + 2 * m_;
    columns_.resize(n_);
    for (int r = 0; r < m_; ++r) {
      for (const auto& [c, a] : lp.rows[r]) {
        if (c < 0 || c >= n_) throw std::invalid_argument("row references unknown column");
        if (a != 0.0) columns_[c].push_back({r, a});
      }
    }
    lower_.resize(total);
    upper_.resize(total);
    x_.assign(total, 0.0);
    state_.assign(total, State::kLower);
    sign_.assign(m_, 1.0);
    for (int j = 0; j < n_; ++j) {
      lower_[j] = lp.col_lower[j];
      upper_[j] = lp.col_upper[j];
    }
    for (int r = 0; r < m_; ++r) {
      lower_[n_ + r] = lp.row_lower[r];
      upper_[n_ + r] = lp.row_upper[r];
      lower_[n_ + m_ + r] = 0.0;
      upper_[n_ + m_ + r] = 0.0;
    }
    objective_.assign(total, 0.0);
    for (int j = 0; j < n_; ++j) objective_[j] = -lp.objective[j];
  }

  SimplexResult run() {
    SimplexResult result;
    const double ftol = options_.feasibility_tolerance;

    // Structurals start at a finite bound; each row gets a basic logical,
    // or an artificial when the starting activity is out of range.
    for (int j = 0; j < n_; ++j) {
      if (std::isfinite(lower_[j])) {
        x_[j] = lower_[j];
        state_[j] = State::kLower;
      } else if (std::isfinite(upper_[j])) {
        x_[j] = upper_[j];
        state_[j] = State::kUpper;
      } else {
        x_[j] = 0.0;
        state_[j] = State::kZero;
      }
    }
    std::vector<double> activity(m_, 0.0);
    for (int j = 0; j < n_; ++j) {
      for (const auto& [r, a] : columns_[j]) activity[r] += a * x_[j];
    }
    basis_.assign(m_, -1);
    bool need_phase_one = false;
    for (int r = 0; r < m_; ++r) {
      const int logical = n_ + r;
      const int artificial = n_ + m_ + r;
      state_[artificial] = State::kLower;
      if (activity[r] < lower_[logical] - ftol || activity[r] > upper_[logical] + ftol) {
        const bool below = activity[r] < lower_[logical];
        const double bound = below ? lower_[logical] : upper_[logical];
        x_[logical] = bound;
        state_[logical] = below ? State::kLower : State::kUpper;
        sign_[r] = bound > activity[r] ? 1.0 : -1.0;
        upper_[artificial] = kInfinity;
        x_[artificial] = std::abs(bound - activity[r]);
        state_[artificial] = State::kBasic;
        basis_[r] = artificial;
        need_phase_one = true;
      } else {
        x_[logical] = activity[r];
        state_[logical] = State::kBasic;
        basis_[r] = logical;
      }
    }
    refactor();

    int iterations = 0;
    if (need_phase_one) {
      std::vector<double> phase_one(n_ + 2 * m_, 0.0);
      for (int r = 0; r < m_; ++r) phase_one[n_ + m_ + r] = 1.0;
      const SimplexStatus status = optimize(phase_one, iterations);
      if (status == SimplexStatus::kIterationLimit) {
        result.status = status;
        result.iterations = iterations;
        return result;
      }
      refactor();
      double infeasibility = 0.0;
      for (int r = 0; r < m_; ++r) infeasibility += x_[n_ + m_ + r];
      if (infeasibility > 1e-7) {
        for (int r = 0; r < m_; ++r) {
          if (x_[n_ + m_ + r] > 1e-9) result.infeasible_rows.push_back(r);
        }
        result.status = SimplexStatus::kInfeasible;
        result.iterations = iterations;
        return result;
      }
      for (int r = 0; r < m_; ++r) {
        const int artificial = n_ + m_ + r;
        upper_[artificial] = 0.0;
        if (state_[artificial] != State::kBasic) {
          x_[artificial] = 0.0;
          state_[artificial] = State::kLower;
        }
      }
      refactor();
    }

    const SimplexStatus status = optimize(objective_, iterations);
    refactor();
    result.status = status;
    result.iterations = iterations;
    result.basic = status == SimplexStatus::kOptimal;
    result.x.assign(x_.begin(), x_.begin() + n_);
    for (int j = 0; j < n_; ++j) {
      // Snap round-off at the column bounds.
      if (std::abs(result.x[j] - lower_[j]) < 1e-12) result.x[j] = lower_[j];
      if (std::abs(result.x[j] - upper_[j]) < 1e-12) result.x[j] = upper_[j];
    }
    result.row_activity.assign(m_, 0.0);
    result.objective = 0.0;
    for (int j = 0; j < n_; ++j) {
      result.objective -= objective_[j] * result.x[j];
      for (const auto& [r, a] : columns_[j]) result.row_activity[r] += a * result.x[j];
    }
    return result;
  }

 private:
  // Column of variable j in [A  -I  diag(sign)].
  template <class F>
  void for_column(int j, F&& f) const {
    if (j < n_) {
      for (const auto& [r, a] : columns_[j]) f(r, a);
    } else if (j < n_ + m_) {
      f(j - n_, -1.0);
    } else {
      f(j - n_ - m_, sign_[j - n_ - m_]);
    }
  }

  void refactor() {
    since_refactor_ = 0;
    if (m_ == 0) return;
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(m_, m_);
    for (int r = 0; r < m_; ++r) {
      for_column(basis_[r], [&](int row, double a) { basis(row, r) = a; });
    }
    binv_ = basis.partialPivLu().inverse();
    if (!binv_.allFinite()) throw std::runtime_error("singular simplex basis");
    // x_B = B^{-1} (-N x_N)
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
    for (int j = 0; j < n_ + 2 * m_; ++j) {
      if (state_[j] == State::kBasic || x_[j] == 0.0) continue;
      for_column(j, [&](int row, double a) { rhs(row) -= a * x_[j]; });
    }
    const Eigen::VectorXd values = binv_ * rhs;
    for (int r = 0; r < m_; ++r) x_[basis_[r]] = values(r);
  }

  SimplexStatus optimize(const std::vector<double>& cost, int& iterations) {
    const double ftol = options_.feasibility_tolerance;
    const double dtol = options_.optimality_tolerance;
    const double ptol = options_.pivot_tolerance;
    const int total = n_ + 2 * m_;
    int degenerate_run = 0;
    Eigen::VectorXd cb(m_), y(m_), w(m_);
    std::vector<double> limit(m_);

    while (true) {
      if (iterations >= options_.max_iterations) return SimplexStatus::kIterationLimit;
      if (since_refactor_ >= options_.refactor_interval) refactor();
      const bool bland = degenerate_run > options_.degenerate_limit;

      for (int r = 0; r < m_; ++r) cb(r) = cost[basis_[r]];
      y.noalias() = binv_.transpose() * cb;

      int entering = -1;
      int direction = 0;
      double best = 0.0;
      for (int j = 0; j < total; ++j) {
        if (state_[j] == State::kBasic || lower_[j] == upper_[j]) continue;
        double d = cost[j];
        for_column(j, [&](int row, double a) { d -= a * y(row); });
        int dir = 0;
        if (d < -dtol && state_[j] != State::kUpper) dir = 1;
        if (d > dtol && state_[j] != State::kLower) dir = -1;
        if (dir == 0) continue;
        if (bland) {
          entering = j;
          direction = dir;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          entering = j;
          direction = dir;
        }
      }
      if (entering < 0) return SimplexStatus::kOptimal;

      w.setZero();
      for_column(entering, [&](int row, double a) { w += a * binv_.col(row); });

      // Harris ratio test: bound the step with relaxed bounds, then pick the
      // largest pivot among rows that block within that step.
      double relaxed_step = kInfinity;
      for (int r = 0; r < m_; ++r) {
        const int b = basis_[r];
        const double rate = -direction * w(r);
        limit[r] = kInfinity;
        if (rate < -ptol && std::isfinite(lower_[b])) {
          limit[r] = std::max(0.0, (x_[b] - lower_[b]) / -rate);
          relaxed_step = std::min(relaxed_step, (x_[b] - lower_[b] + ftol) / -rate);
        } else if (rate > ptol && std::isfinite(upper_[b])) {
          limit[r] = std::max(0.0, (upper_[b] - x_[b]) / rate);
          relaxed_step = std::min(relaxed_step, (upper_[b] - x_[b] + ftol) / rate);
        }
      }
      int leaving = -1;
      if (bland) {
        double min_limit = kInfinity;
        for (int r = 0; r < m_; ++r) min_limit = std::min(min_limit, limit[r]);
        for (int r = 0; r < m_; ++r) {
          if (std::isfinite(limit[r]) && limit[r] <= min_limit + ftol &&
              (leaving < 0 || basis_[r] < basis_[leaving])) {
            leaving = r;
          }
        }
      } else {
        double best_pivot = 0.0;
        for (int r = 0; r < m_; ++r) {
          if (std::isfinite(limit[r]) && limit[r] <= relaxed_step &&
              std::abs(w(r)) > best_pivot) {
            best_pivot = std::abs(w(r));
            leaving = r;
          }
        }
      }
      const double span = upper_[entering] - lower_[entering];
      if (leaving < 0 && !std::isfinite(span)) return SimplexStatus::kUnbounded;

      double step = leaving >= 0 ? limit[leaving] : kInfinity;
      const bool flip = span <= step;
      if (flip) step = span;

      for (int r = 0; r < m_; ++r) x_[basis_[r]] -= direction * step * w(r);
      x_[entering] += direction * step;
      if (flip) {
        state_[entering] = direction > 0 ? State::kUpper : State::kLower;
        x_[entering] = direction > 0 ? upper_[entering] : lower_[entering];
      } else {
        const int out = basis_[leaving];
        const bool to_lower = -direction * w(leaving) < 0;
        x_[out] = to_lower ? lower_[out] : upper_[out];
        state_[out] = to_lower ? State::kLower : State::kUpper;
        state_[entering] = State::kBasic;
        basis_[leaving] = entering;

        const double pivot = w(leaving);
        binv_.row(leaving) /= pivot;
        for (int r = 0; r < m_; ++r) {
          if (r != leaving && w(r) != 0.0) binv_.row(r) -= w(r) * binv_.row(leaving);
        }
        ++since_refactor_;
      }
      ++iterations;
      degenerate_run = step <= 1e-12 ? degenerate_run + 1 : 0;
    }
  }

  SimplexOptions options_;
  int n_;
  int m_;
  std::vector<std::vector<std::pair<int, double>>> columns_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> x_;
  std::vector<double> objective_;
  std::vector<State> state_;
  std::vector<double> sign_;
  std::vector<int> basis_;
  Eigen::MatrixXd binv_;
  int since_refactor_ = 0;
};

}  // namespace

int LinearProgram::add_column(double cost, double lower, double upper) {
  objective.push_back(cost);
  col_lower.push_back(lower);
  col_upper.push_back(upper);
  return num_cols++;
}

int LinearProgram::add_row(std::vector<Entry> entries, double lower, double upper) {
  rows.push_back(std::move(entries));
  row_lower.push_back(lower);
  row_upper.push_back(upper);
  return num_rows() - 1;
}

std::string to_string(SimplexStatus status) {
  switch (status) {
    case SimplexStatus::kOptimal: return "optimal";
    case SimplexStatus::kInfeasible: return "infeasible";
    case SimplexStatus::kUnbounded: return "unbounded";
    case SimplexStatus::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

SimplexResult solve_simplex(const LinearProgram& lp, const SimplexOptions& options) {
  if (static_cast<int>(lp.objective.size()) != lp.num_cols ||
      static_cast<int>(lp.col_lower.size()) != lp.num_cols ||
      static_cast<int>(lp.col_upper.size()) != lp.num_cols ||
      lp.row_lower.size() != lp.rows.size() || lp.row_upper.size() != lp.rows.size()) {
    throw std::invalid_argument("inconsistent linear program dimensions");
  }
  for (int j = 0; j < lp.num_cols; ++j) {
    if (lp.col_lower[j] > lp.col_upper[j]) {
      throw std::invalid_argument("column bounds out of order");
    }
  }
  Solver solver(lp, options);
  return solver.run();
}

}  // namespace fairrank
