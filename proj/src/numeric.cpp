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

#include "lbayes/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace lbayes {

double log_sum_exp(std::span<const double> x) {
  double max = -std::numeric_limits<double>::infinity();
  for (const double v : x) max = std::max(max, v);
  if (!std::isfinite(max)) return max;  // -inf (all absent) or +inf
  double acc = 0.0;
  for (const double v : x) {
    if (v != -std::numeric_limits<double>::infinity()) acc += std::exp(v - max);
  }
  return max + std::log(acc);
}

double pairwise_sum(std::span<const double> x) {
  constexpr std::size_t kLeaf = 32;
  if (x.size() <= kLeaf) {
    double acc = 0.0;
    for (const double v : x) acc += v;
    return acc;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

MeanSd mean_sd(std::span<const double> x) {
  MeanSd out;
  if (x.empty()) return out;
  const auto n = static_cast<double>(x.size());
  out.mean = pairwise_sum(x) / n;
  if (x.size() < 2) return out;
  std::vector<double> sq(x.size());
  std::transform(x.begin(), x.end(), sq.begin(), [m = out.mean](double v) { return (v - m) * (v - m); });
  out.sd = std::sqrt(pairwise_sum(sq) / (n - 1.0));
  return out;
}

}  // namespace lbayes
