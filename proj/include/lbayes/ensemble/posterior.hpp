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

#ifndef LBAYES_ENSEMBLE_POSTERIOR_HPP
#define LBAYES_ENSEMBLE_POSTERIOR_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lbayes/density/log_density.hpp"
#include "lbayes/ensemble/weights.hpp"
#include "lbayes/mcmc/sampler.hpp"

namespace lbayes {

/// Goal values of one model's retained draws, row-major (draws x width).
struct ModelGoalDraws {
  std::string model_id;
  std::vector<GoalShape> shapes;
  std::vector<std::string> columns;
  std::vector<double> values;

  [[nodiscard]] std::size_t width() const { return columns.size(); }
  [[nodiscard]] std::size_t draw_count() const { return width() == 0 ? 0 : values.size() / width(); }
};

/// Evaluates the goal block of `f` on every constrained draw of `s`.
ModelGoalDraws extract_goal_draws(std::string model_id, const LogDensityFn& f, const PosteriorSamples& s);

/// Pooled draws; each draw of model n carries weight w_n / K_n.
struct WeightedPosterior {
  std::vector<std::string> columns;
  std::vector<std::string> model_ids;  // per model
  std::vector<double> model_weights;   // per model
  std::vector<std::size_t> draw_model; // per draw, index into model_ids
  std::vector<double> draw_weights;    // per draw
  std::vector<double> values;          // draws x columns

  [[nodiscard]] std::size_t draw_count() const { return draw_weights.size(); }
  [[nodiscard]] std::span<const double> draw(std::size_t i) const {
    return std::span<const double>(values).subspan(i * columns.size(), columns.size());
  }
};

/// Throws Error(E_GOAL_SHAPE_MISMATCH) when models disagree on goal names or
/// shapes, E_BAD_ARG when sizes disagree.
WeightedPosterior combine(std::span<const ModelGoalDraws> models, const WeightVector& w);

/// combine() with uniform model weights.
WeightedPosterior flat_average(std::span<const ModelGoalDraws> models);

struct Summary {
  double mean = 0.0;
  double sd = 0.0;
  double q05 = 0.0;
  double q50 = 0.0;
  double q95 = 0.0;
};

/// Weighted quantile, lower-step: the smallest draw whose cumulative weight
/// reaches p.
double weighted_quantile(std::span<const double> values, std::span<const double> weights, double p);

/// Weighted mean, sd and 5/50/95% quantiles of one goal column.
/// Throws Error(E_UNDECLARED_NAME) for an unknown column.
Summary weighted_summary(const WeightedPosterior& wp, const std::string& column);

/// CSV "model_id,weight,<columns>" with one row per pooled draw.
void write_weighted_csv(std::ostream& out, const WeightedPosterior& wp);

}  // namespace lbayes

#endif
