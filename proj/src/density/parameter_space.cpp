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

#include "lbayes/density/parameter_space.hpp"

#include <cmath>
#include <limits>

#include "lbayes/error.hpp"

namespace lbayes {

namespace {

/// log(1 + exp(x)) without overflow.
double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

/// Keeps `x` strictly inside (lo, hi) when rounding lands on a bound.
double clamp_open(double x, double lo, double hi) {
  if (x <= lo) return std::nextafter(lo, std::numeric_limits<double>::infinity());
  if (x >= hi) return std::nextafter(hi, -std::numeric_limits<double>::infinity());
  return x;
}

}  // namespace

const ParamEntry* ParameterSpace::find(std::string_view name) const {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

std::vector<std::string> ParameterSpace::coordinate_names() const {
  std::vector<std::string> names;
  names.reserve(dim);
  for (const auto& e : entries) {
    if (!e.is_vector) {
      names.push_back(e.name);
      continue;
    }
    for (std::size_t i = 0; i < e.length; ++i) names.push_back(e.name + "[" + std::to_string(i + 1) + "]");
  }
  return names;
}

ParameterSpace build_parameter_space(const dsl::ParsedModel& m, const Dataset& d) {
  check_dataset(m, d);
  ParameterSpace space;
  for (const auto& p : m.params) {
    ParamEntry e;
    e.name = p.name;
    e.offset = space.dim;
    e.is_vector = p.extent.has_value();
    e.length = p.extent ? resolve_extent(*p.extent, d) : 1;
    if (e.length == 0) throw Error(ErrorCode::kShapeMismatch, "parameter '" + p.name + "' has zero length");
    e.lower = p.lower;
    e.upper = p.upper;
    space.dim += e.length;
    space.entries.push_back(std::move(e));
  }
  return space;
}

std::vector<double> to_unconstrained(const ParameterSpace& space, std::span<const double> constrained) {
  if (constrained.size() != space.dim) {
    throw Error(ErrorCode::kShapeMismatch, "expected " + std::to_string(space.dim) + " values");
  }
  std::vector<double> y(space.dim);
  for (const auto& e : space.entries) {
    for (std::size_t i = e.offset; i < e.offset + e.length; ++i) {
      const double x = constrained[i];
      const bool ok = std::isfinite(x) && (!e.lower || x > *e.lower) && (!e.upper || x < *e.upper);
      if (!ok) throw Error(ErrorCode::kOutOfDomain, "value for '" + e.name + "' is outside its bounds");
      if (e.lower && e.upper) {
        y[i] = std::log(x - *e.lower) - std::log(*e.upper - x);
      } else if (e.lower) {
        y[i] = std::log(x - *e.lower);
      } else if (e.upper) {
        y[i] = std::log(*e.upper - x);
      } else {
        y[i] = x;
      }
    }
  }
  return y;
}

double from_unconstrained_into(const ParameterSpace& space, std::span<const double> y, std::span<double> out) {
  double log_jac = 0.0;
  for (const auto& e : space.entries) {
    for (std::size_t i = e.offset; i < e.offset + e.length; ++i) {
      const double v = y[i];
      if (e.lower && e.upper) {
        const double width = *e.upper - *e.lower;
        const double s = 1.0 / (1.0 + std::exp(-v));
        out[i] = clamp_open(*e.lower + width * s, *e.lower, *e.upper);
        log_jac += std::log(width) - softplus(-v) - softplus(v);
      } else if (e.lower) {
        out[i] = clamp_open(*e.lower + std::exp(v), *e.lower, std::numeric_limits<double>::infinity());
        log_jac += v;
      } else if (e.upper) {
        out[i] = clamp_open(*e.upper - std::exp(v), -std::numeric_limits<double>::infinity(), *e.upper);
        log_jac += v;
      } else {
        out[i] = v;
      }
    }
  }
  return log_jac;
}

ConstrainedPoint from_unconstrained(const ParameterSpace& space, std::span<const double> y) {
  ConstrainedPoint p;
  p.values.resize(space.dim);
  p.log_jacobian = from_unconstrained_into(space, y, p.values);
  return p;
}

}  // namespace lbayes
