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

#ifndef LBAYES_NUMERIC_HPP
#define LBAYES_NUMERIC_HPP

#include <span>

namespace lbayes {

inline constexpr double kLog2Pi = 1.8378770664093454835606594728112;

/// log(sum(exp(x))). Entries equal to -inf are ignored; returns -inf when
/// every entry is -inf or the input is empty.
double log_sum_exp(std::span<const double> x);

/// Pairwise (cascade) summation with a fixed tree shape: the result depends
/// only on the input order, never on how the input was produced.
double pairwise_sum(std::span<const double> x);

/// Sample mean and (divisor n-1) standard deviation via pairwise sums.
struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};
MeanSd mean_sd(std::span<const double> x);

}  // namespace lbayes

#endif
