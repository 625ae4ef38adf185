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

#include "lbayes/ensemble/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "lbayes/error.hpp"

namespace lbayes {

ModelGoalDraws extract_goal_draws(std::string model_id, const LogDensityFn& f, const PosteriorSamples& s) {
  ModelGoalDraws out;
  out.model_id = std::move(model_id);
  out.shapes = f.goal_shapes();
  out.columns = f.goal_columns();
  const std::size_t width = out.columns.size();
  out.values.resize(s.total_draws() * width);
  for (std::size_t n = 0; n < s.total_draws(); ++n) {
    f.eval_goals(s.constrained_draw(n), std::span<double>(out.values).subspan(n * width, width));
  }
  return out;
}

WeightedPosterior combine(std::span<const ModelGoalDraws> models, const WeightVector& w) {
  if (models.size() != w.weights.size()) {
    throw Error(ErrorCode::kBadArg, std::to_string(models.size()) + " models but " +
                                        std::to_string(w.weights.size()) + " weights");
  }
  WeightedPosterior wp;
  if (models.empty()) return wp;
  wp.columns = models.front().columns;
  for (std::size_t n = 0; n < models.size(); ++n) {
    const ModelGoalDraws& m = models[n];
    if (m.shapes != models.front().shapes) {
      throw Error(ErrorCode::kGoalShapeMismatch,
                  "model '" + m.model_id + "' has goals that differ from model '" + models.front().model_id + "'");
    }
    wp.model_ids.push_back(m.model_id);
    wp.model_weights.push_back(w.weights[n]);
    const std::size_t count = m.draw_count();
    if (count == 0) {
      if (w.weights[n] > 0.0) throw Error(ErrorCode::kBadArg, "model '" + m.model_id + "' has weight but no draws");
      continue;
    }
    const double per_draw = w.weights[n] / static_cast<double>(count);
    wp.draw_model.insert(wp.draw_model.end(), count, n);
    wp.draw_weights.insert(wp.draw_weights.end(), count, per_draw);
    wp.values.insert(wp.values.end(), m.values.begin(), m.values.end());
  }
  return wp;
}

WeightedPosterior flat_average(std::span<const ModelGoalDraws> models) {
  return combine(models, uniform_weights(models.size()));
}

double weighted_quantile(std::span<const double> values, std::span<const double> weights, double p) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  double total = 0.0;
  for (const double w : weights) total += w;
  const double target = p * total * (1.0 - 1e-12);
  double cumulative = 0.0;
  for (const std::size_t i : order) {
    cumulative += weights[i];
    if (weights[i] > 0.0 && cumulative >= target) return values[i];
  }
  return order.empty() ? std::nan("") : values[order.back()];
}

Summary weighted_summary(const WeightedPosterior& wp, const std::string& column) {
  const auto it = std::find(wp.columns.begin(), wp.columns.end(), column);
  if (it == wp.columns.end()) throw Error(ErrorCode::kUndeclaredName, "no goal column '" + column + "'");
  const auto col = static_cast<std::size_t>(it - wp.columns.begin());
  std::vector<double> values(wp.draw_count());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = wp.draw(i)[col];

  Summary s;
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    s.mean += wp.draw_weights[i] * values[i];
    total += wp.draw_weights[i];
  }
  s.mean /= total;
  double var = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) var += wp.draw_weights[i] * (values[i] - s.mean) * (values[i] - s.mean);
  s.sd = std::sqrt(var / total);
  s.q05 = weighted_quantile(values, wp.draw_weights, 0.05);
  s.q50 = weighted_quantile(values, wp.draw_weights, 0.50);
  s.q95 = weighted_quantile(values, wp.draw_weights, 0.95);
  return s;
}

void write_weighted_csv(std::ostream& out, const WeightedPosterior& wp) {
  out << "model_id,weight";
  for (const auto& c : wp.columns) out << ',' << c;
  out << '\n';
  const auto precision = out.precision(17);
  for (std::size_t i = 0; i < wp.draw_count(); ++i) {
    out << wp.model_ids[wp.draw_model[i]] << ',' << wp.draw_weights[i];
    for (const double v : wp.draw(i)) out << ',' << v;
    out << '\n';
  }
  out.precision(precision);
}

}  // namespace lbayes
