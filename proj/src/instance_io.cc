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

#include "fairrank/instance_io.h"

#include <fstream>
#include <sstream>

namespace fairrank {
namespace {

using nlohmann::json;

// Error raised while walking a parsed document; the key names the field.
struct FieldError {
  std::string key;
  std::string message;
};

const json& require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw FieldError{key, std::string("missing required field \"") + key + "\""};
  }
  return doc.at(key);
}

int as_int(const json& value, const std::string& key) {
  if (!value.is_number_integer()) {
    throw FieldError{key, "field \"" + key + "\" must hold integers"};
  }
  return value.get<int>();
}

double as_double(const json& value, const std::string& key) {
  if (!value.is_number()) {
    throw FieldError{key, "field \"" + key + "\" must hold numbers"};
  }
  return value.get<double>();
}

const json& as_array(const json& value, const std::string& key) {
  if (!value.is_array()) {
    throw FieldError{key, "field \"" + key + "\" must be an array"};
  }
  return value;
}

std::vector<double> real_vector(const json& doc, const char* key) {
  std::vector<double> out;
  for (const auto& x : as_array(require(doc, key), key)) out.push_back(as_double(x, key));
  return out;
}

// Reads a rows x cols matrix; an empty array is accepted when rows or cols is 0.
template <class Matrix, class Reader>
Matrix matrix(const json& doc, const char* key, int rows, int cols, Reader read) {
  const json& outer = as_array(require(doc, key), key);
  Matrix out(rows, cols);
  if (rows == 0 || cols == 0) return out;
  if (static_cast<int>(outer.size()) != rows) {
    throw FieldError{key, "field \"" + std::string(key) + "\" must have " +
                              std::to_string(rows) + " rows, found " +
                              std::to_string(outer.size())};
  }
  for (int r = 0; r < rows; ++r) {
    const json& row = as_array(outer[r], key);
    if (static_cast<int>(row.size()) != cols) {
      throw FieldError{key, "row " + std::to_string(r + 1) + " of \"" + key +
                                "\" must have " + std::to_string(cols) + " entries"};
    }
    for (int c = 0; c < cols; ++c) out(r, c) = read(row[c], key);
  }
  return out;
}

int line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  int line = 1;
  for (std::size_t k = 0; k < offset; ++k) {
    if (text[k] == '\n') ++line;
  }
  return line;
}

int line_of_key(std::string_view text, const std::string& key) {
  const std::size_t at = text.find("\"" + key + "\"");
  return at == std::string_view::npos ? 0 : line_of_offset(text, at);
}

}  // namespace

ParseError::ParseError(const std::string& message, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                  : message),
      line_(line) {}

InstanceData instance_data_from_json(const json& doc) {
  if (!doc.is_object()) throw FieldError{"", "instance document must be an object"};
  InstanceData data;
  data.m = as_int(require(doc, "m"), "m");
  data.n = as_int(require(doc, "n"), "n");
  data.rho = real_vector(doc, "rho");
  data.v = real_vector(doc, "v");
  for (const auto& block : as_array(require(doc, "blocks"), "blocks")) {
    std::vector<int> positions;
    for (const auto& t : as_array(block, "blocks")) positions.push_back(as_int(t, "blocks") - 1);
    data.blocks.push_back(std::move(positions));
  }
  for (const auto& entry : as_array(require(doc, "groups"), "groups")) {
    Group group;
    const json& id = require(entry, "id");
    group.id = id.is_string() ? id.get<std::string>() : id.dump();
    for (const auto& i : as_array(require(entry, "members"), "members")) {
      group.members.push_back(as_int(i, "members") - 1);
    }
    data.groups.push_back(std::move(group));
  }
  const int q = static_cast<int>(data.blocks.size());
  const int p = static_cast<int>(data.groups.size());
  data.L = matrix<Eigen::MatrixXi>(doc, "L", q, p, as_int);
  data.U = matrix<Eigen::MatrixXi>(doc, "U", q, p, as_int);
  data.C = matrix<Eigen::MatrixXd>(doc, "C", std::max(data.m, 0), q, as_double);
  data.A = matrix<Eigen::MatrixXd>(doc, "A", std::max(data.m, 0), q, as_double);
  return data;
}

json instance_data_to_json(const InstanceData& data) {
  json doc;
  doc["m"] = data.m;
  doc["n"] = data.n;
  doc["rho"] = data.rho;
  doc["v"] = data.v;
  json blocks = json::array();
  for (const auto& block : data.blocks) {
    json positions = json::array();
    for (int t : block) positions.push_back(t + 1);
    blocks.push_back(positions);
  }
  doc["blocks"] = blocks;
  json groups = json::array();
  for (const auto& group : data.groups) {
    json members = json::array();
    for (int i : group.members) members.push_back(i + 1);
    groups.push_back({{"id", group.id}, {"members", members}});
  }
  doc["groups"] = groups;
  auto rows = [](const auto& mat) {
    json out = json::array();
    for (Eigen::Index r = 0; r < mat.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < mat.cols(); ++c) row.push_back(mat(r, c));
      out.push_back(row);
    }
    return out;
  };
  doc["L"] = rows(data.L);
  doc["U"] = rows(data.U);
  doc["C"] = rows(data.C);
  doc["A"] = rows(data.A);
  return doc;
}

Instance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  InstanceData data;
  try {
    data = instance_data_from_json(doc);
  } catch (const FieldError& e) {
    throw ParseError(e.message, e.key.empty() ? 0 : line_of_key(text, e.key));
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  return Instance::create(std::move(data));
}

Instance load_instance(const std::filesystem::path& path) {
  return parse_instance(read_file(path));
}

std::string instance_to_json(const Instance& instance) {
  return instance_data_to_json(instance.source_order_data()).dump(1);
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  write_file(path, instance_to_json(instance) + "\n");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
}

}  // namespace fairrank
