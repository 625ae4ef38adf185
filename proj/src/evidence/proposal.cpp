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

#include "lbayes/evidence/proposal.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "lbayes/error.hpp"
#include "lbayes/numeric.hpp"

namespace lbayes {

namespace {

bool try_factor(const Eigen::MatrixXd& cov, Eigen::MatrixXd& chol) {
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) return false;
  chol = llt.matrixL();
  for (Eigen::Index i = 0; i < chol.rows(); ++i) {
    if (!(chol(i, i) > 0.0) || !std::isfinite(chol(i, i))) return false;
  }
  return true;
}

}  // namespace

GaussianProposal::GaussianProposal(Eigen::VectorXd mean, Eigen::MatrixXd covariance)
    : mean_(std::move(mean)), covariance_(std::move(covariance)) {
  if (covariance_.rows() != mean_.size() || covariance_.cols() != mean_.size()) {
    throw Error(ErrorCode::kDegenerate, "covariance shape does not match mean");
  }
  if (!try_factor(covariance_, chol_)) throw Error(ErrorCode::kDegenerate, "covariance is not positive definite");
  log_det_half_ = chol_.diagonal().array().log().sum();
}

double GaussianProposal::log_density(std::span<const double> y) const {
  const Eigen::Map<const Eigen::VectorXd> point(y.data(), mean_.size());
  const Eigen::VectorXd z = chol_.triangularView<Eigen::Lower>().solve(point - mean_);
  return -0.5 * static_cast<double>(mean_.size()) * kLog2Pi - log_det_half_ - 0.5 * z.squaredNorm();
}

double GaussianProposal::sample(Rng& rng, std::span<double> out) const {
  std::normal_distribution<double> normal(0.0, 1.0);
  const Eigen::Index d = mean_.size();
  Eigen::VectorXd z(d);
  for (Eigen::Index i = 0; i < d; ++i) z(i) = normal(rng);
  Eigen::Map<Eigen::VectorXd> y(out.data(), d);
  y = mean_;
  y.noalias() += chol_.triangularView<Eigen::Lower>() * z;
  return -0.5 * static_cast<double>(d) * kLog2Pi - log_det_half_ - 0.5 * z.squaredNorm();
}

GaussianProposal moment_match(std::span<const double> draws, std::size_t dim) {
  const std::size_t count = dim == 0 ? 0 : draws.size() / dim;
  if (dim == 0 || count < 2) {
    throw Error(ErrorCode::kDegenerate, "moment matching needs at least 2 draws, got " + std::to_string(count));
  }
  const auto d = static_cast<Eigen::Index>(dim);
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> x(
      draws.data(), static_cast<Eigen::Index>(count), d);
  GaussianProposal q;
  q.mean_ = x.colwise().mean().transpose();
  const Eigen::MatrixXd centered = x.rowwise() - q.mean_.transpose();
  q.covariance_ = (centered.transpose() * centered) / static_cast<double>(count - 1);
  q.covariance_ = 0.5 * (q.covariance_ + q.covariance_.transpose());

  if (!try_factor(q.covariance_, q.chol_)) {
    const double mean_diag = q.covariance_.diagonal().mean();
    const double scale = mean_diag > 0.0 ? mean_diag : 1.0;
    bool ok = false;
    for (double eps = 1e-8; eps <= 1e-2 * (1.0 + 1e-9); eps *= 10.0) {
      Eigen::MatrixXd jittered = q.covariance_;
      jittered.diagonal().array() += eps * scale;
      if (try_factor(jittered, q.chol_)) {
        q.covariance_ = std::move(jittered);
        q.jitter_ = eps * scale;
        ok = true;
        break;
      }
    }
    if (!ok) throw Error(ErrorCode::kDegenerate, "sample covariance stays singular after jitter up to 1e-2");
  }
  q.log_det_half_ = q.chol_.diagonal().array().log().sum();
  return q;
}

GaussianProposal moment_match(const PosteriorSamples& s) { return moment_match(s.draws, s.dim); }

}  // namespace lbayes
