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

#ifndef LBAYES_EVIDENCE_CONJUGATE_HPP
#define LBAYES_EVIDENCE_CONJUGATE_HPP

#include <span>
#include <string_view>

namespace lbayes {

/// log p(x) for Bernoulli observations under a Beta(alpha, beta) prior.
double beta_bernoulli_log_evidence(double alpha, double beta, long long successes, long long failures);

/// log p(k) for one Binomial(trials, p) observation under a Beta prior.
double beta_binomial_log_evidence(double alpha, double beta, long long successes, long long trials);

/// log p(x) for x_i ~ N(mu, noise_sd), mu ~ N(prior_mean, prior_sd).
double normal_normal_log_evidence(double prior_mean, double prior_sd, double noise_sd,
                                  std::span<const double> xs);

/// Dispatch by family tag:
///   beta_bernoulli          data = 0/1 outcomes,       hyper = {alpha, beta}
///   beta_binomial           data = {successes, trials}, hyper = {alpha, beta}
///   normal_normal_known_var data = observations,       hyper = {prior_mean, prior_sd, noise_sd}
/// Throws Error(E_UNSUPPORTED_FAMILY) for other tags, E_BAD_ARG for malformed input.
double conjugate_evidence(std::string_view family, std::span<const double> data, std::span<const double> hyper);

}  // namespace lbayes

#endif
