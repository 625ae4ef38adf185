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

#ifndef LBAYES_EVIDENCE_BOUNDS_HPP
#define LBAYES_EVIDENCE_BOUNDS_HPP

#include <cstdint>
#include <vector>

#include "lbayes/density/log_density.hpp"
#include "lbayes/evidence/proposal.hpp"
#include "lbayes/execution.hpp"

namespace lbayes {

struct EvidenceConfig {
  int K = 25;
  int R = 10000;
  std::uint64_t seed = 0;
  Execution execution = Execution::kParallel;

  /// Throws Error(E_INVALID_CONFIG) unless K >= 1 and R >= 1.
  void check() const;
};

struct EvidenceEstimate {
  double value = 0.0;      // nats
  double std_error = 0.0;  // sd of repetition terms / sqrt(R); +inf if value is -inf
  int K = 0;
  int R = 0;
};

/// Per-repetition terms logsumexp_k(log p(y_k, x) - log q(y_k)) - log K with
/// y_k ~ q drawn from the stream derive_seed(cfg.seed, r). Samples where the
/// log joint is -inf drop out of the logsumexp; a repetition where all K do
/// is -inf.
std::vector<double> iw_elbo_terms(const LogDensityFn& f, const GaussianProposal& q, const EvidenceConfig& cfg);

/// Importance-weighted lower bound on log p(x): mean of iw_elbo_terms,
/// accumulated by fixed-shape pairwise summation.
EvidenceEstimate iw_elbo(const LogDensityFn& f, const GaussianProposal& q, const EvidenceConfig& cfg);

/// Plain ELBO: Monte Carlo mean of log p(y, x) - log q(y) over `samples`
/// draws. Identical to iw_elbo with K = 1 and R = samples.
EvidenceEstimate elbo(const LogDensityFn& f, const GaussianProposal& q, int samples, std::uint64_t seed,
                      Execution execution = Execution::kParallel);

}  // namespace lbayes

#endif
