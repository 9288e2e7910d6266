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

#include "fairrank/items.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fairrank/instance_io.h"

namespace fairrank {
namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      out.push_back(current);
      current.clear();
    } else if (c != '\r') {
      current += c;
    }
  }
  out.push_back(current);
  return out;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

}  // namespace

ItemTable gen_synthetic(const SyntheticSpec& spec) {
  if (!(spec.majority_fraction > 0.0 && spec.majority_fraction < 1.0)) {
    throw std::invalid_argument("majority fraction must lie in (0, 1)");
  }
  std::mt19937_64 rng(spec.seed);
  const int majority = static_cast<int>(std::lround(spec.majority_fraction * spec.m));
  ItemTable table;
  for (int i = 0; i < spec.m; ++i) {
    const bool major = i < majority;
    std::normal_distribution<double> noise(major ? spec.mu_major : spec.mu_minor, spec.spread);
    table.ids.push_back(std::to_string(i + 1));
    table.utility.push_back(std::clamp(noise(rng), 0.0, 1.0));
    table.labels.push_back({major ? "G1" : "G2"});
  }
  return table;
}

std::vector<Group> groups_from_labels(const ItemTable& table) {
  std::vector<Group> groups;
  std::map<std::string, int> index;
  for (int i = 0; i < table.size(); ++i) {
    for (const auto& label : table.labels[i]) {
      auto [it, inserted] = index.emplace(label, static_cast<int>(groups.size()));
      if (inserted) groups.push_back({label, {}});
      groups[it->second].members.push_back(i);
    }
  }
  for (std::size_t a = 0; a < groups.size(); ++a) {
    for (std::size_t b = a + 1; b < groups.size(); ++b) {
      std::vector<int> common;
      std::set_intersection(groups[a].members.begin(), groups[a].members.end(),
                            groups[b].members.begin(), groups[b].members.end(),
                            std::back_inserter(common));
      if (!common.empty() && common.size() != groups[a].members.size() &&
          common.size() != groups[b].members.size()) {
        throw std::invalid_argument("group labels " + groups[a].id + " and " + groups[b].id +
                                    " overlap without nesting");
      }
    }
  }
  return groups;
}

ItemTable parse_items_csv(std::string_view text) {
  ItemTable table;
  std::set<std::string> seen;
  int line_number = 0;
  bool header = true;
  for (const auto& raw : split(text, '\n')) {
    ++line_number;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      if (line.rfind("id,", 0) == 0) continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() < 2 || fields.size() > 3) {
      throw std::invalid_argument("line " + std::to_string(line_number) +
                                  ": expected id,utility,groups");
    }
    const std::string id = trim(fields[0]);
    if (!seen.insert(id).second) {
      throw std::invalid_argument("line " + std::to_string(line_number) + ": duplicate id " + id);
    }
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(fields[1], &used);
      if (trim(fields[1].substr(used)).size() > 0) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("line " + std::to_string(line_number) + ": bad utility");
    }
    std::vector<std::string> labels;
    if (fields.size() == 3) {
      for (const auto& label : split(fields[2], ';')) {
        if (!trim(label).empty()) labels.push_back(trim(label));
      }
    }
    table.ids.push_back(id);
    table.utility.push_back(value);
    table.labels.push_back(std::move(labels));
  }
  groups_from_labels(table);
  return table;
}

ItemTable load_items_csv(const std::filesystem::path& path) {
  return parse_items_csv(read_file(path));
}

std::string items_to_csv(const ItemTable& table) {
  std::ostringstream out;
  out.precision(17);
  out << "id,utility,groups\n";
  for (int i = 0; i < table.size(); ++i) {
    out << table.ids[i] << ',' << table.utility[i] << ',';
    for (std::size_t k = 0; k < table.labels[i].size(); ++k) {
      out << (k ? ";" : "") << table.labels[i][k];
    }
    out << '\n';
  }
  return out.str();
}

ItemTable subsample_items(const ItemTable& table, int m, int n, std::uint64_t seed) {
  if (m > table.size()) throw std::invalid_argument("cannot subsample more items than exist");
  const auto groups = groups_from_labels(table);
  const int p = static_cast<int>(groups.size());
  const int quota = p > 0 ? (n + p - 1) / p : 0;
  for (const auto& group : groups) {
    if (static_cast<int>(group.members.size()) < quota) {
      throw std::invalid_argument("group " + group.id + " has fewer than " +
                                  std::to_string(quota) + " items");
    }
  }
  std::mt19937_64 rng(seed);
  std::vector<int> rows(table.size());
  std::iota(rows.begin(), rows.end(), 0);
  constexpr int kMaxRetries = 10000;
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    std::vector<int> pick;
    std::sample(rows.begin(), rows.end(), std::back_inserter(pick), m, rng);
    std::vector<char> chosen(table.size(), 0);
    for (int r : pick) chosen[r] = 1;
    bool ok = true;
    for (const auto& group : groups) {
      int count = 0;
      for (int r : group.members) count += chosen[r];
      ok = ok && count >= quota;
    }
    if (!ok) continue;
    ItemTable out;
    for (int r : pick) {
      out.ids.push_back(table.ids[r]);
      out.utility.push_back(table.utility[r]);
      out.labels.push_back(table.labels[r]);
    }
    return out;
  }
  throw std::invalid_argument("group quota not met after bounded retries");
}

}  // namespace fairrank
