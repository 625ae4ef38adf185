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

#include "lbayes/evidence/conjugate.hpp"

#include <cmath>
#include <string>

#include "lbayes/error.hpp"
#include "lbayes/numeric.hpp"

namespace lbayes {

namespace {

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

double log_choose(long long n, long long k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorCode::kBadArg, msg);
}

bool is_count(double v) { return v >= 0.0 && std::floor(v) == v; }

}  // namespace

double beta_bernoulli_log_evidence(double alpha, double beta, long long successes, long long failures) {
  require(alpha > 0.0 && beta > 0.0, "beta hyperparameters must be positive");
  require(successes >= 0 && failures >= 0, "counts must be non-negative");
  return log_beta(alpha + static_cast<double>(successes), beta + static_cast<double>(failures)) -
         log_beta(alpha, beta);
}

double beta_binomial_log_evidence(double alpha, double beta, long long successes, long long trials) {
  require(successes >= 0 && successes <= trials, "successes must lie in [0, trials]");
  return log_choose(trials, successes) + beta_bernoulli_log_evidence(alpha, beta, successes, trials - successes);
}

double normal_normal_log_evidence(double prior_mean, double prior_sd, double noise_sd, std::span<const double> xs) {
  require(prior_sd > 0.0 && noise_sd > 0.0, "standard deviations must be positive");
  // Chain rule over posterior predictives: p(x) = prod_i p(x_i | x_{<i}).
  double mean = prior_mean;
  double var = prior_sd * prior_sd;
  const double noise_var = noise_sd * noise_sd;
  double total = 0.0;
  for (const double x : xs) {
    const double pred_var = var + noise_var;
    total += -0.5 * (kLog2Pi + std::log(pred_var) + (x - mean) * (x - mean) / pred_var);
    const double gain = var / pred_var;
    mean += gain * (x - mean);
    var *= noise_var / pred_var;
  }
  return total;
}

double conjugate_evidence(std::string_view family, std::span<const double> data, std::span<const double> hyper) {
  if (family == "beta_bernoulli") {
    require(hyper.size() == 2, "beta_bernoulli takes hyperparameters {alpha, beta}");
    long long heads = 0;
    long long tails = 0;
    for (const double v : data) {
      require(v == 0.0 || v == 1.0, "beta_bernoulli data must be 0/1");
      (v == 1.0 ? heads : tails) += 1;
    }
    return beta_bernoulli_log_evidence(hyper[0], hyper[1], heads, tails);
  }
  if (family == "beta_binomial") {
    require(hyper.size() == 2, "beta_binomial takes hyperparameters {alpha, beta}");
    require(data.size() == 2 && is_count(data[0]) && is_count(data[1]), "beta_binomial data is {successes, trials}");
    return beta_binomial_log_evidence(hyper[0], hyper[1], static_cast<long long>(data[0]),
                                      static_cast<long long>(data[1]));
  }
  if (family == "normal_normal_known_var") {
    require(hyper.size() == 3, "normal_normal_known_var takes {prior_mean, prior_sd, noise_sd}");
    return normal_normal_log_evidence(hyper[0], hyper[1], hyper[2], data);
  }
  throw Error(ErrorCode::kUnsupportedFamily, "unsupported conjugate family '" + std::string(family) + "'");
}

}  // namespace lbayes
