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

#include "lbayes/evidence/bounds.hpp"

#include <cmath>
#include <limits>

#include "lbayes/error.hpp"
#include "lbayes/numeric.hpp"
#include "lbayes/rng.hpp"

namespace lbayes {

void EvidenceConfig::check() const {
  if (K < 1) throw Error(ErrorCode::kInvalidConfig, "K must be at least 1");
  if (R < 1) throw Error(ErrorCode::kInvalidConfig, "R must be at least 1");
}

std::vector<double> iw_elbo_terms(const LogDensityFn& f, const GaussianProposal& q, const EvidenceConfig& cfg) {
  cfg.check();
  const auto reps = static_cast<std::size_t>(cfg.R);
  const auto inner = static_cast<std::size_t>(cfg.K);
  const double log_k = std::log(static_cast<double>(cfg.K));
  std::vector<double> terms(reps);
  for_each_index(reps, cfg.execution, [&](std::size_t r) {
    Rng rng = make_rng(derive_seed(cfg.seed, r));
    std::vector<double> y(q.dim());
    std::vector<double> log_w(inner);
    for (std::size_t k = 0; k < inner; ++k) {
      const double log_q = q.sample(rng, y);
      log_w[k] = f(y) - log_q;
    }
    terms[r] = log_sum_exp(log_w) - log_k;
  });
  return terms;
}

EvidenceEstimate iw_elbo(const LogDensityFn& f, const GaussianProposal& q, const EvidenceConfig& cfg) {
  const std::vector<double> terms = iw_elbo_terms(f, q, cfg);
  EvidenceEstimate est;
  est.K = cfg.K;
  est.R = cfg.R;
  for (const double t : terms) {
    if (t == -std::numeric_limits<double>::infinity()) {
      est.value = t;
      est.std_error = std::numeric_limits<double>::infinity();
      return est;
    }
  }
  const MeanSd ms = mean_sd(terms);
  est.value = ms.mean;
  est.std_error = terms.size() > 1 ? ms.sd / std::sqrt(static_cast<double>(terms.size())) : 0.0;
  return est;
}

EvidenceEstimate elbo(const LogDensityFn& f, const GaussianProposal& q, int samples, std::uint64_t seed,
                      Execution execution) {
  if (samples < 2) throw Error(ErrorCode::kInvalidConfig, "elbo needs at least 2 samples");
  return iw_elbo(f, q, EvidenceConfig{1, samples, seed, execution});
}

}  // namespace lbayes
