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

#ifndef FAIRRANK_DECOMPOSITION_H_
#define FAIRRANK_DECOMPOSITION_H_

#include <stdexcept>

#include "fairrank/flow_network.h"
#include "fairrank/instance.h"

namespace fairrank {

// Entries within this distance of 0 or 1 are treated as integral.
inline constexpr double kIntegralityTolerance = 1e-7;
// Decomposition weights below this are dropped and the rest renormalized.
inline constexpr double kMinimumWeight = 1e-10;

class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DecompositionResult {
  Policy<Matching> policy;
  int iterations = 0;
  // max |sum_t weight_t M_t - x| over all entries.
  double residual = 0.0;
};

// An integral matching M with M = 1 where x is within tolerance of 1, M = 0
// where x is within tolerance of 0, every (group, block) count within the
// floor/ceiling of x's count, and every item's total within the floor/ceiling
// of x's row sum. Throws DecompositionError when no such matching exists,
// which means x lies outside the group-fair matching polytope.
Matching vertex_oracle(const MatchingMarginal& x, const FlowNetwork& net);

// Face-descent Caratheodory decomposition into group-fair matchings.
// Throws DecompositionError on non-convergence within mq + qp + 1 steps.
DecompositionResult decompose_matching(const MatchingMarginal& x, const FlowNetwork& net);

// Exact integer check of the (L, U) bounds encoded in the network, plus the
// matching shape (block sizes, at most one block per item).
bool satisfies_network_bounds(const Matching& matching, const FlowNetwork& net);

}  // namespace fairrank

#endif  // FAIRRANK_DECOMPOSITION_H_
