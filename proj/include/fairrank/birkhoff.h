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

#ifndef FAIRRANK_BIRKHOFF_H_
#define FAIRRANK_BIRKHOFF_H_

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "fairrank/instance.h"

namespace fairrank {

// Entries at or below this are outside the support.
inline constexpr double kSupportThreshold = 1e-9;

class BirkhoffError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A perfect matching row -> column on entries above the threshold, found by
// augmenting paths with rows and columns scanned in increasing order.
// Empty when none exists.
std::vector<int> perfect_matching(const Eigen::MatrixXd& weights, double threshold);

// Completes an m x n marginal (n <= m) to a doubly stochastic m x m matrix by
// distributing each row's deficit over the extra columns in order.
Eigen::MatrixXd square_pad(const Eigen::MatrixXd& D);

// Convex combination of rankings reconstructing D. Non-square D is padded
// first; the returned rankings cover only D's n positions.
Policy<RankingMatrix> birkhoff_decompose(const MarginalD& D);

}  // namespace fairrank

#endif  // FAIRRANK_BIRKHOFF_H_
