// Copyright 2026 The lbayes Authors
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

#ifndef LBAYES_DENSITY_DATASET_HPP
#define LBAYES_DENSITY_DATASET_HPP

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lbayes/dsl/ast.hpp"

namespace lbayes {

struct DataValue {
  bool is_integer = false;
  bool is_array = false;
  std::vector<double> values;  // one entry for scalars

  friend bool operator==(const DataValue&, const DataValue&) = default;
};

/// Observed data x: name -> number or array of numbers. Integer-ness is taken
/// from the JSON token, so `1.0` is a real even though it is integral.
struct Dataset {
  std::map<std::string, DataValue, std::less<>> bindings;

  [[nodiscard]] const DataValue* find(std::string_view name) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Parses a single JSON object of name -> number | array of numbers.
/// Throws Error(E_DATA_DOMAIN) on any other shape.
Dataset parse_dataset(std::string_view json_text);
Dataset load_dataset(const std::filesystem::path& path);

/// Checks that `d` binds exactly the model's data declarations with matching
/// shapes and domains (E_MISSING_DATA, E_EXTRA_DATA, E_SHAPE_MISMATCH,
/// E_DATA_DOMAIN).
void check_dataset(const dsl::ParsedModel& m, const Dataset& d);

/// Resolves an array extent against the dataset.
std::size_t resolve_extent(const dsl::Extent& extent, const Dataset& d);

}  // namespace lbayes

#endif
