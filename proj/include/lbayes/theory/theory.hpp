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

#ifndef LBAYES_THEORY_THEORY_HPP
#define LBAYES_THEORY_THEORY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lbayes/execution.hpp"
#include "lbayes/theory/model_space.hpp"

namespace lbayes::theory {

/// log p(x) = log sum_m p(m) p(x|m).
double log_marginal(const FiniteModelSpace& s);

/// p(m|x) proportional to p(m) p(x|m). Throws Error(E_DEGENERATE) when every
/// model has zero posterior mass.
std::vector<double> exact_model_posterior(const FiniteModelSpace& s);

/// Model weights minimizing the joint divergence for fixed per-model
/// variational posteriors: proportional to p(m) p(x|m) exp(-KL_m).
std::vector<double> optimal_model_weights(const FiniteModelSpace& s);

/// The same weights written in terms of ELBOs: proportional to p(m) exp(ELBO_m).
std::vector<double> optimal_model_weights_elbo(std::span<const double> prior, std::span<const double> elbo);

/// KL(q(z,m) || p(z,m|x)) for model weights `weights` and per-model
/// divergences s.kl: sum_m q_m (log(q_m / p(m|x)) + KL_m).
double joint_divergence_at(const FiniteModelSpace& s, std::span<const double> weights);

/// Minimum joint divergence: -log sum_m p(m|x) exp(-KL_m).
double joint_divergence(const FiniteModelSpace& s);

/// The minimum from ELBOs alone: log p(x) - log sum_m p(m) exp(ELBO_m).
double joint_divergence_elbo(std::span<const double> prior, std::span<const double> elbo, double log_px);

/// sum_m p(m|x) KL_m, an upper bound on the joint divergence.
double relaxed_bound(const FiniteModelSpace& s);

struct VarianceReport {
  double mu = 0.0;     // sum_m p(m|x) g(m)
  double v_n = 0.0;    // limit of N times the SNIS estimator variance
  double chi2 = 0.0;   // chi-squared divergence of posterior from prior
  std::optional<double> delta;
  std::optional<double> bound;  // delta^2 (1 + chi2)
};

/// Asymptotic variance of the SNIS estimate of mu when models are drawn from
/// the prior and weighted by evidence. Throws Error(E_ZERO_PRIOR_SUPPORT)
/// when a model with zero prior has positive posterior mass.
VarianceReport snis_asymptotic_variance(const FiniteModelSpace& s, std::optional<double> delta = std::nullopt);

struct SnisSimulation {
  double mean = 0.0;
  double variance = 0.0;  // divisor replications - 1
  int n = 0;
  int replications = 0;
};

/// Replication r draws n models iid from the prior (stream derive_seed(seed,
/// r)), weights them by softmax(log_evidence) and records sum w g.
SnisSimulation simulate_snis(const FiniteModelSpace& s, int n, int replications, std::uint64_t seed,
                             Execution execution = Execution::kParallel);

struct InexactDivergence {
  std::vector<double> weights;  // proportional to p(m) exp(ELBO_m - slack_m)
  double mean_slack = 0.0;      // sum_m weights_m slack_m
  double direct = 0.0;          // -log sum_m p(m|x) exp(-KL_m - slack_m + mean_slack)
  double elbo_form = 0.0;       // log p(x) - log sum_m p(m) exp(ELBO_m - slack_m + mean_slack)
};

/// Joint divergence attained when weights use ELBO_m - slack_m instead of
/// the true ELBO. Throws Error(E_BAD_ARG) when the space has no slack.
InexactDivergence inexact_divergence(const FiniteModelSpace& s);

struct TheoryCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct TheoryOptions {
  int snis_n = 200;
  int snis_replications = 100000;
  std::uint64_t seed = 0;
  Execution execution = Execution::kParallel;
};

/// Runs every operation above on `s` and checks the identities and
/// inequalities that tie them together.
struct TheoryReport {
  std::vector<double> posterior;
  std::vector<double> optimal_weights;
  std::vector<double> optimal_weights_elbo;
  double log_px = 0.0;
  double joint_divergence = 0.0;
  double joint_divergence_elbo = 0.0;
  double relaxed_bound = 0.0;
  VarianceReport variance;
  SnisSimulation simulation;
  std::optional<InexactDivergence> inexact;
  std::vector<TheoryCheck> checks;

  [[nodiscard]] bool all_passed() const;
};

TheoryReport run_theory(const FiniteModelSpace& s, const TheoryOptions& opts = {});

/// Pretty JSON with numbers rounded to 10 significant digits.
std::string theory_report_to_json(const TheoryReport& r);

}  // namespace lbayes::theory

#endif
