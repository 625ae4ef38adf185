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

#ifndef LBAYES_EVIDENCE_PROPOSAL_HPP
#define LBAYES_EVIDENCE_PROPOSAL_HPP

#include <Eigen/Core>
#include <span>

#include "lbayes/mcmc/sampler.hpp"
#include "lbayes/rng.hpp"

namespace lbayes {

/// Multivariate normal over the unconstrained parameter space.
class GaussianProposal {
 public:
  /// Throws Error(E_DEGENERATE) when `covariance` has no Cholesky factor.
  GaussianProposal(Eigen::VectorXd mean, Eigen::MatrixXd covariance);

  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(mean_.size()); }
  [[nodiscard]] const Eigen::VectorXd& mean() const { return mean_; }
  [[nodiscard]] const Eigen::MatrixXd& covariance() const { return covariance_; }
  [[nodiscard]] const Eigen::MatrixXd& chol() const { return chol_; }
  /// Diagonal jitter added by moment_match to reach positive definiteness.
  [[nodiscard]] double jitter() const { return jitter_; }

  [[nodiscard]] double log_density(std::span<const double> y) const;

  /// Writes y ~ q into `out` and returns log q(y).
  double sample(Rng& rng, std::span<double> out) const;

 private:
  friend GaussianProposal moment_match(std::span<const double>, std::size_t);
  GaussianProposal() = default;

  Eigen::VectorXd mean_;
  Eigen::MatrixXd covariance_;
  Eigen::MatrixXd chol_;
  double log_det_half_ = 0.0;  // sum of log chol diagonal
  double jitter_ = 0.0;
};

/// Gaussian with the sample mean and unbiased (divisor S-1) covariance of
/// row-major `draws` (S x dim, S >= 2; E_DEGENERATE otherwise). If the covariance is not positive definite,
/// adds eps * I with eps = 1e-8 * mean diagonal (1e-8 when that is zero),
/// growing by 10x up to 1e-2 * mean diagonal before throwing E_DEGENERATE.
GaussianProposal moment_match(std::span<const double> draws, std::size_t dim);
GaussianProposal moment_match(const PosteriorSamples& s);

}  // namespace lbayes

#endif
