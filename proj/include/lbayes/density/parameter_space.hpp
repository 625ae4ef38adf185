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

#ifndef LBAYES_DENSITY_PARAMETER_SPACE_HPP
#define LBAYES_DENSITY_PARAMETER_SPACE_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lbayes/density/dataset.hpp"
#include "lbayes/dsl/ast.hpp"

namespace lbayes {

struct ParamEntry {
  std::string name;
  std::size_t offset = 0;
  std::size_t length = 1;
  bool is_vector = false;
  std::optional<double> lower;
  std::optional<double> upper;

  friend bool operator==(const ParamEntry&, const ParamEntry&) = default;
};

/// Layout of the flat parameter vector, in declaration order.
struct ParameterSpace {
  std::vector<ParamEntry> entries;
  std::size_t dim = 0;

  [[nodiscard]] const ParamEntry* find(std::string_view name) const;
  /// Column names for flat coordinates: `theta`, `mu[1]`, `mu[2]`, ...
  [[nodiscard]] std::vector<std::string> coordinate_names() const;

  friend bool operator==(const ParameterSpace&, const ParameterSpace&) = default;
};

ParameterSpace build_parameter_space(const dsl::ParsedModel& m, const Dataset& d);

/// Constrained -> unconstrained. Throws Error(E_OUT_OF_DOMAIN) when a value is
/// not strictly inside its bounds.
std::vector<double> to_unconstrained(const ParameterSpace& space, std::span<const double> constrained);

struct ConstrainedPoint {
  std::vector<double> values;
  double log_jacobian = 0.0;
};

/// Unconstrained -> constrained, with log|det dv/dy|. Defined on all of R^dim.
ConstrainedPoint from_unconstrained(const ParameterSpace& space, std::span<const double> y);

/// Allocation-free form of from_unconstrained; returns the log-Jacobian.
double from_unconstrained_into(const ParameterSpace& space, std::span<const double> y, std::span<double> out);

}  // namespace lbayes

#endif
