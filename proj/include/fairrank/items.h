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

#ifndef FAIRRANK_ITEMS_H_
#define FAIRRANK_ITEMS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fairrank/instance.h"

namespace fairrank {

// One row per item: an id, an estimated utility and the labels of every
// group containing it.
struct ItemTable {
  std::vector<std::string> ids;
  std::vector<double> utility;
  std::vector<std::vector<std::string>> labels;

  int size() const { return static_cast<int>(ids.size()); }
};

struct SyntheticSpec {
  int m = 100;
  double majority_fraction = 0.6;
  double mu_major = 0.7;
  double mu_minor = 0.35;
  // Standard deviation of utilities around each group mean.
  double spread = 0.15;
  std::uint64_t seed = 1;
};

// round(fraction * m) majority items labelled "G1", the rest "G2"; utilities
// normal around the group means, clipped to [0, 1].
ItemTable gen_synthetic(const SyntheticSpec& spec);

// CSV with header "id,utility,groups"; groups are ';'-separated labels.
// Throws std::invalid_argument on duplicate ids, bad numbers, or labels
// that do not form a laminar family.
ItemTable parse_items_csv(std::string_view text);
ItemTable load_items_csv(const std::filesystem::path& path);
std::string items_to_csv(const ItemTable& table);

// Distinct labels in first-appearance order as groups over row indices.
std::vector<Group> groups_from_labels(const ItemTable& table);

// Uniform subset of m rows with at least ceil(n / p) members of every group,
// redrawn up to a bounded number of times.
ItemTable subsample_items(const ItemTable& table, int m, int n, std::uint64_t seed);

}  // namespace fairrank

#endif  // FAIRRANK_ITEMS_H_
