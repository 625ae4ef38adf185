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

#ifndef LBAYES_MCMC_SAMPLER_HPP
#define LBAYES_MCMC_SAMPLER_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "lbayes/density/log_density.hpp"
#include "lbayes/execution.hpp"

namespace lbayes {

struct McmcConfig {
  int chains = 2;
  int iterations = 10000;  // retained draws per chain
  int warmup = 5000;
  double target_accept = 0.30;
  std::uint64_t seed = 0;
  Execution execution = Execution::kParallel;

  /// Throws Error(E_INVALID_CONFIG) when a field is out of range.
  void check() const;
};

struct ChainResult {
  std::vector<double> draws;  // iterations x dim, row-major, unconstrained
  double accept_rate = 0.0;
  double step_scale = 0.0;    // adapted proposal scale
};

/// Draws stored chain-major: draw (c, i) starts at ((c * iterations) + i) * dim.
struct PosteriorSamples {
  std::size_t chains = 0;
  std::size_t iterations = 0;
  std::size_t dim = 0;
  std::vector<double> draws;
  std::vector<double> constrained_draws;
  std::vector<double> accept_rate;
  ParameterSpace space;

  [[nodiscard]] std::size_t total_draws() const { return chains * iterations; }
  [[nodiscard]] std::span<const double> draw(std::size_t chain, std::size_t iter) const {
    return std::span<const double>(draws).subspan((chain * iterations + iter) * dim, dim);
  }
  [[nodiscard]] std::span<const double> constrained_draw(std::size_t chain, std::size_t iter) const {
    return std::span<const double>(constrained_draws).subspan((chain * iterations + iter) * dim, dim);
  }
  /// Draw number `n` across all chains in chain-major order.
  [[nodiscard]] std::span<const double> draw(std::size_t n) const {
    return std::span<const double>(draws).subspan(n * dim, dim);
  }
  [[nodiscard]] std::span<const double> constrained_draw(std::size_t n) const {
    return std::span<const double>(constrained_draws).subspan(n * dim, dim);
  }
  [[nodiscard]] double mean_accept_rate() const;
};

/// Adaptive random-walk Metropolis. The proposal is N(y, s^2 (C + 1e-6 I)),
/// with C the running covariance of warmup draws and log s tuned by
/// Robbins-Monro toward cfg.target_accept. Both are frozen after warmup.
/// Throws Error(E_INIT_INVALID) when f(init) is -inf.
ChainResult run_chain(const LogDensityFn& f, std::span<const double> init, const McmcConfig& cfg,
                      std::size_t chain_index);

/// Runs cfg.chains chains from jittered initial points (0 plus U(-0.5, 0.5)
/// per coordinate, i.e. the midpoint of bounded parameters). Gives up with
/// Error(E_CANNOT_INITIALIZE) after 100 invalid jitters for a chain.
PosteriorSamples sample_posterior(const LogDensityFn& f, const McmcConfig& cfg);
PosteriorSamples sample_posterior(const dsl::ParsedModel& m, const Dataset& d, const McmcConfig& cfg);

/// CSV dump "chain,iter,<coordinates>" of constrained draws (1-based indices).
void write_draws_csv(std::ostream& out, const PosteriorSamples& s);

}  // namespace lbayes

#endif
