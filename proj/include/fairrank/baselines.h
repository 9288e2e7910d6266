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

#ifndef FAIRRANK_BASELINES_H_
#define FAIRRANK_BASELINES_H_

#include <stdexcept>

#include "fairrank/instance.h"
#include "fairrank/pipeline.h"

namespace fairrank {

class GreedyDeadEnd : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The top n items in utility order.
RankingPolicy baseline_unconstrained(const Instance& instance);

// Fills positions in order with the highest-utility item that keeps every
// upper bound of its block and leaves the block's lower bounds completable.
RankingPolicy baseline_greedy_group_fair(const Instance& instance);

// Individual-fairness program, Birkhoff-von Neumann decomposed.
RankingPolicy baseline_sjk21_if(const Instance& instance);

// Program with group rows, Birkhoff-von Neumann decomposed; group bounds
// hold only in expectation.
RankingPolicy baseline_sjk21_gf_if(const Instance& instance);

}  // namespace fairrank

#endif  // FAIRRANK_BASELINES_H_
