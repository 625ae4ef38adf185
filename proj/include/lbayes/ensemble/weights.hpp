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

#ifndef LBAYES_ENSEMBLE_WEIGHTS_HPP
#define LBAYES_ENSEMBLE_WEIGHTS_HPP

#include <span>
#include <vector>

namespace lbayes {

struct WeightVector {
  std::vector<double> weights;
  std::vector<double> log_scores;
};

/// softmax(log_scores) with max subtraction; -inf scores get weight 0.
/// Throws Error(E_ALL_NEG_INF) if every score is -inf (or the input is empty).
WeightVector snis_weights(std::span<const double> log_scores);

/// Uniform weights 1/n.
WeightVector uniform_weights(std::size_t n);

/// 1 / sum(w^2).
double weight_ess(const WeightVector& w);

}  // namespace lbayes

#endif
