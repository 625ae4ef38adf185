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

#ifndef LBAYES_MCMC_DIAGNOSTICS_HPP
#define LBAYES_MCMC_DIAGNOSTICS_HPP

#include <span>
#include <vector>

#include "lbayes/mcmc/sampler.hpp"

namespace lbayes {

struct Diagnostics {
  std::vector<double> split_rhat;
  std::vector<double> ess;
  bool passed = false;

  [[nodiscard]] double rhat_max() const;
  [[nodiscard]] double ess_min() const;
};

inline constexpr double kRhatThreshold = 1.05;
inline constexpr double kEssThreshold = 100.0;

/// Split R-hat of one coordinate. `chains` holds equal-length sequences.
/// Clamped below at 1; +inf when within-chain variance vanishes but the
/// chains disagree.
double split_rhat(std::span<const std::vector<double>> chains);

/// Effective sample size of one coordinate over split chains, with Geyer's
/// initial positive sequence. Clamped to [1, total draws].
double effective_sample_size(std::span<const std::vector<double>> chains);

Diagnostics diagnostics(const PosteriorSamples& s);

}  // namespace lbayes

#endif
