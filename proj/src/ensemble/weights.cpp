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

#include "lbayes/ensemble/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lbayes/error.hpp"

namespace lbayes {

WeightVector snis_weights(std::span<const double> log_scores) {
  WeightVector w;
  w.log_scores.assign(log_scores.begin(), log_scores.end());
  double max = -std::numeric_limits<double>::infinity();
  for (const double l : log_scores) {
    if (std::isnan(l) || l == std::numeric_limits<double>::infinity()) {
      throw Error(ErrorCode::kBadArg, "log scores must be finite or -inf");
    }
    max = std::max(max, l);
  }
  if (max == -std::numeric_limits<double>::infinity()) {
    throw Error(ErrorCode::kAllNegInf, "every model has log score -inf");
  }
  w.weights.resize(log_scores.size());
  double total = 0.0;
  for (std::size_t i = 0; i < log_scores.size(); ++i) {
    w.weights[i] = std::exp(log_scores[i] - max);
    total += w.weights[i];
  }
  for (double& v : w.weights) v /= total;
  return w;
}

WeightVector uniform_weights(std::size_t n) {
  WeightVector w;
  w.weights.assign(n, 1.0 / static_cast<double>(n));
  w.log_scores.assign(n, 0.0);
  return w;
}

double weight_ess(const WeightVector& w) {
  double sq = 0.0;
  for (const double v : w.weights) sq += v * v;
  return sq > 0.0 ? 1.0 / sq : 0.0;
}

}  // namespace lbayes
