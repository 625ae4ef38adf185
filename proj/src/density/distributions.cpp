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

#include "lbayes/density/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "lbayes/error.hpp"
#include "lbayes/numeric.hpp"

namespace lbayes {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool positive(double v) { return std::isfinite(v) && v > 0.0; }
bool unit(double p) { return p >= 0.0 && p <= 1.0; }
bool is_count(double v) { return std::isfinite(v) && v >= 0.0 && std::floor(v) == v; }

double lbeta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

double normal_lpdf(double mu, double sigma, double x) {
  if (!std::isfinite(mu) || !positive(sigma) || !std::isfinite(x)) return kNegInf;
  const double z = (x - mu) / sigma;
  return -0.5 * z * z - std::log(sigma) - 0.5 * kLog2Pi;
}

double student_t_lpdf(double nu, double mu, double sigma, double x) {
  if (!positive(nu) || !std::isfinite(mu) || !positive(sigma) || !std::isfinite(x)) return kNegInf;
  const double z = (x - mu) / sigma;
  return std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) - 0.5 * std::log(nu * std::numbers::pi) -
         std::log(sigma) - 0.5 * (nu + 1.0) * std::log1p(z * z / nu);
}

double uniform_lpdf(double lo, double hi, double x) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) return kNegInf;
  if (x < lo || x > hi) return kNegInf;
  return -std::log(hi - lo);
}

double beta_lpdf(double a, double b, double x) {
  if (!positive(a) || !positive(b) || !(x > 0.0 && x < 1.0)) return kNegInf;
  return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - lbeta(a, b);
}

double gamma_lpdf(double shape, double rate, double x) {
  if (!positive(shape) || !positive(rate) || !(x > 0.0) || !std::isfinite(x)) return kNegInf;
  return shape * std::log(rate) - std::lgamma(shape) + (shape - 1.0) * std::log(x) - rate * x;
}

double exponential_lpdf(double rate, double x) {
  if (!positive(rate) || !(x >= 0.0) || !std::isfinite(x)) return kNegInf;
  return std::log(rate) - rate * x;
}

double bernoulli_lpmf(double p, double x) {
  if (!unit(p)) return kNegInf;
  if (x == 1.0) return std::log(p);
  if (x == 0.0) return std::log1p(-p);
  return kNegInf;
}

double binomial_lpmf(double n, double p, double x) {
  if (!is_count(n) || !unit(p) || !is_count(x) || x > n) return kNegInf;
  double lp = std::lgamma(n + 1.0) - std::lgamma(x + 1.0) - std::lgamma(n - x + 1.0);
  if (x > 0.0) lp += x * std::log(p);
  if (n - x > 0.0) lp += (n - x) * std::log1p(-p);
  return lp;
}

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

}  // namespace

bool supports_truncation(dsl::Dist dist) {
  switch (dist) {
    case dsl::Dist::kNormal:
    case dsl::Dist::kUniform:
    case dsl::Dist::kBeta:
    case dsl::Dist::kGamma:
    case dsl::Dist::kExponential: return true;
    default: return false;
  }
}

double dist_cdf(dsl::Dist dist, std::span<const double> a, double x) {
  if (std::isnan(x)) return kNaN;
  switch (dist) {
    case dsl::Dist::kNormal:
      if (!std::isfinite(a[0]) || !positive(a[1])) return kNaN;
      return std_normal_cdf((x - a[0]) / a[1]);
    case dsl::Dist::kUniform:
      if (!std::isfinite(a[0]) || !std::isfinite(a[1]) || !(a[0] < a[1])) return kNaN;
      if (x <= a[0]) return 0.0;
      if (x >= a[1]) return 1.0;
      return (x - a[0]) / (a[1] - a[0]);
    case dsl::Dist::kBeta:
      if (!positive(a[0]) || !positive(a[1])) return kNaN;
      if (x <= 0.0) return 0.0;
      if (x >= 1.0) return 1.0;
      return boost::math::ibeta(a[0], a[1], x);
    case dsl::Dist::kGamma:
      if (!positive(a[0]) || !positive(a[1])) return kNaN;
      if (x <= 0.0) return 0.0;
      if (std::isinf(x)) return 1.0;
      return boost::math::gamma_p(a[0], a[1] * x);
    case dsl::Dist::kExponential:
      if (!positive(a[0])) return kNaN;
      if (x <= 0.0) return 0.0;
      return -std::expm1(-a[0] * x);
    default:
      throw Error(ErrorCode::kUnsupportedTruncation,
                  "no CDF for " + std::string(dsl::dist_name(dist)) + "; truncation is not supported");
  }
}

double log_truncation_mass(dsl::Dist dist, std::span<const double> args, const Truncation& trunc) {
  if (!supports_truncation(dist)) {
    throw Error(ErrorCode::kUnsupportedTruncation,
                "truncating " + std::string(dsl::dist_name(dist)) + " is not supported");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const double lo = trunc.lower.value_or(-kInf);
  const double hi = trunc.upper.value_or(kInf);
  double mass = 0.0;
  if (dist == dsl::Dist::kNormal && std::isfinite(args[0]) && positive(args[1]) && lo > args[0]) {
    // Upper tail: difference of survival functions keeps precision.
    const auto survival = [&](double x) { return 0.5 * std::erfc((x - args[0]) / (args[1] * std::numbers::sqrt2)); };
    mass = survival(lo) - survival(hi);
  } else {
    mass = dist_cdf(dist, args, hi) - dist_cdf(dist, args, lo);
  }
  if (std::isnan(mass) || !(mass > 0.0)) return kNegInf;
  return std::log(mass);
}

double log_density_dist(dsl::Dist dist, std::span<const double> a, double value,
                        const std::optional<Truncation>& trunc) {
  if (trunc && !supports_truncation(dist)) {
    throw Error(ErrorCode::kUnsupportedTruncation,
                "truncating " + std::string(dsl::dist_name(dist)) + " is not supported");
  }
  double lp = kNegInf;
  switch (dist) {
    case dsl::Dist::kNormal: lp = normal_lpdf(a[0], a[1], value); break;
    case dsl::Dist::kStudentT: lp = student_t_lpdf(a[0], a[1], a[2], value); break;
    case dsl::Dist::kUniform: lp = uniform_lpdf(a[0], a[1], value); break;
    case dsl::Dist::kBeta: lp = beta_lpdf(a[0], a[1], value); break;
    case dsl::Dist::kGamma: lp = gamma_lpdf(a[0], a[1], value); break;
    case dsl::Dist::kExponential: lp = exponential_lpdf(a[0], value); break;
    case dsl::Dist::kBernoulli: lp = bernoulli_lpmf(a[0], value); break;
    case dsl::Dist::kBinomial: lp = binomial_lpmf(a[0], a[1], value); break;
  }
  if (trunc && lp != kNegInf) {
    if ((trunc->lower && value < *trunc->lower) || (trunc->upper && value > *trunc->upper)) return kNegInf;
    const double log_mass = log_truncation_mass(dist, a, *trunc);
    if (log_mass == kNegInf) return kNegInf;
    lp -= log_mass;
  }
  return std::isnan(lp) ? kNegInf : lp;
}

}  // namespace lbayes
