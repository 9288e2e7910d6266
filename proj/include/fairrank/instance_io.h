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

#ifndef FAIRRANK_INSTANCE_IO_H_
#define FAIRRANK_INSTANCE_IO_H_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "fairrank/instance.h"

namespace fairrank {

// Malformed input. `line()` is 1-based, or 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line = 0);
  int line() const { return line_; }

 private:
  int line_;
};

// JSON <-> raw data. Files use 1-indexed items and positions.
InstanceData instance_data_from_json(const nlohmann::json& doc);
nlohmann::json instance_data_to_json(const InstanceData& data);

// Throws ParseError or ValidationError.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::filesystem::path& path);

// Writes items in their source order.
std::string instance_to_json(const Instance& instance);
void save_instance(const Instance& instance, const std::filesystem::path& path);

// Reads a whole file; throws std::runtime_error when it cannot be opened.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace fairrank

#endif  // FAIRRANK_INSTANCE_IO_H_
