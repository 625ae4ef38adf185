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

#include "lbayes/density/dataset.hpp"

#include <cmath>

#include <json.hpp>

#include "lbayes/error.hpp"
#include "lbayes/io.hpp"

namespace lbayes {

namespace {

double number_of(const nlohmann::json& v, const std::string& name, bool& is_integer) {
  if (v.is_number_integer()) {
    is_integer = true;
    return v.get<double>();
  }
  if (v.is_number_float()) {
    is_integer = false;
    return v.get<double>();
  }
  throw Error(ErrorCode::kDataDomain, "data '" + name + "' must be a number or an array of numbers");
}

}  // namespace

const DataValue* Dataset::find(std::string_view name) const {
  const auto it = bindings.find(name);
  return it == bindings.end() ? nullptr : &it->second;
}

Dataset parse_dataset(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kDataDomain, std::string("dataset is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kDataDomain, "dataset must be a JSON object");
  Dataset d;
  for (const auto& [name, v] : j.items()) {
    DataValue dv;
    if (v.is_array()) {
      dv.is_array = true;
      dv.is_integer = true;
      for (const auto& e : v) {
        bool is_int = false;
        dv.values.push_back(number_of(e, name, is_int));
        dv.is_integer = dv.is_integer && is_int;
      }
    } else {
      bool is_int = false;
      dv.values.push_back(number_of(v, name, is_int));
      dv.is_integer = is_int;
    }
    d.bindings.emplace(name, std::move(dv));
  }
  return d;
}

Dataset load_dataset(const std::filesystem::path& path) {
  return parse_dataset(read_text_file(path));
}

std::size_t resolve_extent(const dsl::Extent& extent, const Dataset& d) {
  if (const auto* n = std::get_if<long long>(&extent)) return static_cast<std::size_t>(*n);
  const auto& name = std::get<std::string>(extent);
  const DataValue* v = d.find(name);
  if (v == nullptr) throw Error(ErrorCode::kMissingData, "missing data '" + name + "'");
  if (v->is_array || !v->is_integer || v->values[0] < 0) {
    throw Error(ErrorCode::kShapeMismatch, "extent '" + name + "' must be a non-negative int scalar");
  }
  return static_cast<std::size_t>(v->values[0]);
}

void check_dataset(const dsl::ParsedModel& m, const Dataset& d) {
  for (const auto& decl : m.data_decls) {
    const DataValue* v = d.find(decl.name);
    if (v == nullptr) throw Error(ErrorCode::kMissingData, "missing data '" + decl.name + "'");
    if (decl.extent) {
      if (!v->is_array) throw Error(ErrorCode::kShapeMismatch, "data '" + decl.name + "' must be an array");
      const std::size_t n = resolve_extent(*decl.extent, d);
      if (v->values.size() != n) {
        throw Error(ErrorCode::kShapeMismatch, "data '" + decl.name + "' has length " +
                                                   std::to_string(v->values.size()) + ", expected " +
                                                   std::to_string(n));
      }
    } else if (v->is_array) {
      throw Error(ErrorCode::kShapeMismatch, "data '" + decl.name + "' must be a scalar");
    }
    if (decl.type == dsl::ScalarType::kInt && !v->is_integer && !v->values.empty()) {
      throw Error(ErrorCode::kDataDomain, "data '" + decl.name + "' must hold exact integers");
    }
    if (decl.binary_domain) {
      for (const double x : v->values) {
        if (x != 0.0 && x != 1.0) throw Error(ErrorCode::kDataDomain, "data '" + decl.name + "' must be 0 or 1");
      }
    }
    for (const double x : v->values) {
      if (!std::isfinite(x)) throw Error(ErrorCode::kDataDomain, "data '" + decl.name + "' must be finite");
    }
  }
  for (const auto& [name, _] : d.bindings) {
    if (m.find_data(name) == nullptr) throw Error(ErrorCode::kExtraData, "unexpected data '" + name + "'");
  }
}

}  // namespace lbayes
