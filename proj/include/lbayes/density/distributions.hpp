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

#ifndef LBAYES_DENSITY_DISTRIBUTIONS_HPP
#define LBAYES_DENSITY_DISTRIBUTIONS_HPP

#include <optional>
#include <span>

#include "lbayes/dsl/ast.hpp"

namespace lbayes {

struct Truncation {
  std::optional<double> lower;
  std::optional<double> upper;
};

/// Normalized log-pdf / log-pmf. Returns -inf outside the support or for
/// arguments outside their domain; never NaN.
///
/// Argument conventions: normal(mu, sigma), student_t(nu, mu, sigma),
/// uniform(lo, hi), beta(a, b), gamma(shape, rate), exponential(rate),
/// bernoulli(p), binomial(n, p).
///
/// With `trunc`, the density is renormalized to the truncated support by
/// subtracting log(CDF(upper) - CDF(lower)). Throws
/// Error(E_UNSUPPORTED_TRUNCATION) for student_t and discrete distributions.
double log_density_dist(dsl::Dist dist, std::span<const double> args, double value,
                        const std::optional<Truncation>& trunc = std::nullopt);

/// log(CDF(upper) - CDF(lower)); absent bounds are the natural support ends.
double log_truncation_mass(dsl::Dist dist, std::span<const double> args, const Truncation& trunc);

/// CDF at x; -inf/+inf are accepted. NaN for invalid arguments.
double dist_cdf(dsl::Dist dist, std::span<const double> args, double x);

bool supports_truncation(dsl::Dist dist);

}  // namespace lbayes

#endif
