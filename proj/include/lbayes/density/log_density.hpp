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

#ifndef LBAYES_DENSITY_LOG_DENSITY_HPP
#define LBAYES_DENSITY_LOG_DENSITY_HPP

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lbayes/density/dataset.hpp"
#include "lbayes/density/parameter_space.hpp"
#include "lbayes/dsl/ast.hpp"

namespace lbayes {

struct DensityOptions {
  /// Divide truncated priors by their mass inside the parameter bounds. Off
  /// reproduces the unnormalized behaviour of constraint-only truncation.
  bool renormalize_truncation = true;
};

struct GoalShape {
  std::string name;
  std::size_t length = 1;
  bool is_vector = false;

  friend bool operator==(const GoalShape&, const GoalShape&) = default;
};

/// log p(z, x | m) over the unconstrained parameter vector, including the
/// change-of-variables Jacobian.
///
/// Construction compiles the model against the dataset: names are resolved to
/// slots, data-only subexpressions are folded, every shape and index is
/// checked, and truncation is inferred for bounded parameters. Evaluation is
/// then a pure function of `y`; instances are immutable and cheap to copy,
/// and may be evaluated from many threads at once.
class LogDensityFn {
 public:
  LogDensityFn(dsl::ParsedModel model, Dataset data, DensityOptions options = {});

  [[nodiscard]] const dsl::ParsedModel& model() const;
  [[nodiscard]] const Dataset& data() const;
  [[nodiscard]] const ParameterSpace& space() const;
  [[nodiscard]] std::size_t dim() const;
  [[nodiscard]] const DensityOptions& options() const;

  /// log_joint at unconstrained `y`. Returns -inf (never NaN) when any
  /// distribution argument leaves its domain.
  double operator()(std::span<const double> y) const;

  /// Sum of statement log-densities at a constrained point (no Jacobian).
  [[nodiscard]] double log_density_constrained(std::span<const double> constrained) const;

  [[nodiscard]] const std::vector<GoalShape>& goal_shapes() const;
  /// Total number of flattened goal values.
  [[nodiscard]] std::size_t goal_width() const;
  /// Flattened goal column names: `z`, `mu[1]`, ...
  [[nodiscard]] std::vector<std::string> goal_columns() const;
  /// Evaluates goal expressions at a constrained point into `out` (goal_width).
  void eval_goals(std::span<const double> constrained, std::span<double> out) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

inline double log_joint(const LogDensityFn& f, std::span<const double> y) { return f(y); }

}  // namespace lbayes

#endif
