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

#include "lbayes/mcmc/sampler.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "lbayes/error.hpp"
#include "lbayes/rng.hpp"

namespace lbayes {

namespace {

constexpr double kRegularization = 1e-6;
constexpr int kCovarianceUpdateEvery = 50;
constexpr int kInitAttempts = 100;
constexpr std::uint64_t kInitStream = 0x696e6974;  // "init"

/// Welford accumulator for the mean and covariance of warmup draws.
class RunningCovariance {
 public:
  explicit RunningCovariance(Eigen::Index dim)
      : mean_(Eigen::VectorXd::Zero(dim)), m2_(Eigen::MatrixXd::Zero(dim, dim)) {}

  void add(const Eigen::VectorXd& x) {
    ++count_;
    const Eigen::VectorXd delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_.noalias() += delta * (x - mean_).transpose();
  }

  void reset() {
    count_ = 0;
    mean_.setZero();
    m2_.setZero();
  }

  [[nodiscard]] long count() const { return count_; }
  [[nodiscard]] Eigen::MatrixXd covariance() const { return m2_ / static_cast<double>(count_ - 1); }

 private:
  long count_ = 0;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd m2_;
};

/// Lower Cholesky factor of cov + 1e-6 I; falls back to the diagonal when the
/// estimate is not positive definite.
Eigen::MatrixXd proposal_factor(const Eigen::MatrixXd& cov) {
  const Eigen::Index d = cov.rows();
  Eigen::MatrixXd reg = 0.5 * (cov + cov.transpose());
  reg.diagonal().array() += kRegularization;
  Eigen::LLT<Eigen::MatrixXd> llt(reg);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) diag(i, i) = std::sqrt(std::max(cov(i, i), 0.0) + kRegularization);
  return diag;
}

}  // namespace

void McmcConfig::check() const {
  if (chains < 1) throw Error(ErrorCode::kInvalidConfig, "chains must be at least 1");
  if (iterations < 100) throw Error(ErrorCode::kInvalidConfig, "iterations must be at least 100");
  if (warmup < 100) throw Error(ErrorCode::kInvalidConfig, "warmup must be at least 100");
  if (!(target_accept > 0.0 && target_accept < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "target_accept must lie in (0, 1)");
  }
}

double PosteriorSamples::mean_accept_rate() const {
  if (accept_rate.empty()) return 0.0;
  double sum = 0.0;
  for (const double a : accept_rate) sum += a;
  return sum / static_cast<double>(accept_rate.size());
}

ChainResult run_chain(const LogDensityFn& f, std::span<const double> init, const McmcConfig& cfg,
                      std::size_t chain_index) {
  const auto dim = static_cast<Eigen::Index>(init.size());
  Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(init.data(), dim);
  double lp = f(std::span<const double>(y.data(), init.size()));
  if (lp == -std::numeric_limits<double>::infinity()) {
    throw Error(ErrorCode::kInitInvalid, "log density is -inf at the initial point of chain " +
                                             std::to_string(chain_index));
  }

  Rng rng = make_rng(derive_seed(cfg.seed, chain_index));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  Eigen::MatrixXd factor = Eigen::MatrixXd::Identity(dim, dim);
  double log_scale = std::log(2.38 / std::sqrt(static_cast<double>(std::max<Eigen::Index>(dim, 1))));
  RunningCovariance running(dim);
  const long min_for_estimate = 2 * static_cast<long>(dim) + 10;

  ChainResult result;
  result.draws.resize(static_cast<std::size_t>(cfg.iterations) * init.size());
  Eigen::VectorXd z(dim);
  Eigen::VectorXd proposal(dim);
  long accepted = 0;

  const int total = cfg.warmup + cfg.iterations;
  for (int t = 0; t < total; ++t) {
    for (Eigen::Index i = 0; i < dim; ++i) z(i) = normal(rng);
    proposal.noalias() = y + std::exp(log_scale) * (factor * z);
    const double lp_new = f(std::span<const double>(proposal.data(), init.size()));
    const double log_ratio = lp_new - lp;
    const double accept_prob = log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
    const bool accept = uniform(rng) < accept_prob;
    if (accept) {
      y = proposal;
      lp = lp_new;
    }

    if (t < cfg.warmup) {
      log_scale += (accept_prob - cfg.target_accept) / std::pow(static_cast<double>(t + 1), 0.6);
      running.add(y);
      const bool refresh = (t + 1) % kCovarianceUpdateEvery == 0 || t + 1 == cfg.warmup;
      if (refresh && running.count() >= min_for_estimate) factor = proposal_factor(running.covariance());
      // The first half of warmup is mostly transient; re-estimate from the second half.
      if (t + 1 == cfg.warmup / 2 && cfg.warmup - cfg.warmup / 2 >= min_for_estimate) running.reset();
    } else {
      if (accept) ++accepted;
      const auto row = static_cast<std::size_t>(t - cfg.warmup) * init.size();
      std::copy(y.data(), y.data() + dim, result.draws.begin() + static_cast<std::ptrdiff_t>(row));
    }
  }
  result.accept_rate = static_cast<double>(accepted) / static_cast<double>(cfg.iterations);
  result.step_scale = std::exp(log_scale);
  return result;
}

PosteriorSamples sample_posterior(const LogDensityFn& f, const McmcConfig& cfg) {
  cfg.check();
  const std::size_t dim = f.dim();
  const auto chains = static_cast<std::size_t>(cfg.chains);
  std::vector<ChainResult> results(chains);

  for_each_index(chains, cfg.execution, [&](std::size_t c) {
    Rng init_rng = make_rng(derive_seed(cfg.seed, c, kInitStream));
    std::uniform_real_distribution<double> jitter(-0.5, 0.5);
    std::vector<double> init(dim);
    for (int attempt = 0; attempt < kInitAttempts; ++attempt) {
      for (double& v : init) v = jitter(init_rng);
      if (f(init) > -std::numeric_limits<double>::infinity()) {
        results[c] = run_chain(f, init, cfg, c);
        return;
      }
    }
    throw Error(ErrorCode::kCannotInitialize, "no valid initial point for chain " + std::to_string(c) + " after " +
                                                  std::to_string(kInitAttempts) + " attempts");
  });

  PosteriorSamples s;
  s.chains = chains;
  s.iterations = static_cast<std::size_t>(cfg.iterations);
  s.dim = dim;
  s.space = f.space();
  s.draws.reserve(chains * s.iterations * dim);
  for (auto& r : results) {
    s.draws.insert(s.draws.end(), r.draws.begin(), r.draws.end());
    s.accept_rate.push_back(r.accept_rate);
  }
  s.constrained_draws.resize(s.draws.size());
  for (std::size_t n = 0; n < s.total_draws(); ++n) {
    from_unconstrained_into(s.space, s.draw(n), std::span<double>(s.constrained_draws).subspan(n * dim, dim));
  }
  return s;
}

PosteriorSamples sample_posterior(const dsl::ParsedModel& m, const Dataset& d, const McmcConfig& cfg) {
  return sample_posterior(LogDensityFn(m, d), cfg);
}

void write_draws_csv(std::ostream& out, const PosteriorSamples& s) {
  out << "chain,iter";
  for (const auto& name : s.space.coordinate_names()) out << ',' << name;
  out << '\n';
  const auto precision = out.precision(17);
  for (std::size_t c = 0; c < s.chains; ++c) {
    for (std::size_t i = 0; i < s.iterations; ++i) {
      out << c + 1 << ',' << i + 1;
      for (const double v : s.constrained_draw(c, i)) out << ',' << v;
      out << '\n';
    }
  }
  out.precision(precision);
}

}  // namespace lbayes
