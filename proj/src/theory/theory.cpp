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

#include "lbayes/theory/theory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <limits>

#include "lbayes/error.hpp"
#include "lbayes/numeric.hpp"
#include "lbayes/rng.hpp"

namespace lbayes::theory {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kIdentityTol = 1e-12;

double safe_log(double p) { return p > 0.0 ? std::log(p) : kNegInf; }

/// Normalizes exp(log_w) in log space.
std::vector<double> normalize_log(const std::vector<double>& log_w) {
  const double lse = log_sum_exp(log_w);
  if (lse == kNegInf) throw Error(ErrorCode::kDegenerate, "every model has zero mass");
  std::vector<double> out(log_w.size());
  for (std::size_t m = 0; m < log_w.size(); ++m) out[m] = log_w[m] == kNegInf ? 0.0 : std::exp(log_w[m] - lse);
  return out;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

double log_marginal(const FiniteModelSpace& s) {
  std::vector<double> terms(s.size());
  for (std::size_t m = 0; m < s.size(); ++m) terms[m] = safe_log(s.prior[m]) + s.log_evidence[m];
  return log_sum_exp(terms);
}

std::vector<double> exact_model_posterior(const FiniteModelSpace& s) {
  std::vector<double> log_w(s.size());
  for (std::size_t m = 0; m < s.size(); ++m) log_w[m] = safe_log(s.prior[m]) + s.log_evidence[m];
  return normalize_log(log_w);
}

std::vector<double> optimal_model_weights(const FiniteModelSpace& s) {
  std::vector<double> log_w(s.size());
  for (std::size_t m = 0; m < s.size(); ++m) log_w[m] = safe_log(s.prior[m]) + s.log_evidence[m] - s.kl[m];
  return normalize_log(log_w);
}

std::vector<double> optimal_model_weights_elbo(std::span<const double> prior, std::span<const double> elbo) {
  std::vector<double> log_w(prior.size());
  for (std::size_t m = 0; m < prior.size(); ++m) log_w[m] = safe_log(prior[m]) + elbo[m];
  return normalize_log(log_w);
}

double joint_divergence_at(const FiniteModelSpace& s, std::span<const double> weights) {
  const std::vector<double> post = exact_model_posterior(s);
  double total = 0.0;
  for (std::size_t m = 0; m < s.size(); ++m) {
    if (weights[m] <= 0.0) continue;
    if (post[m] <= 0.0) return std::numeric_limits<double>::infinity();
    total += weights[m] * (std::log(weights[m]) - std::log(post[m]) + s.kl[m]);
  }
  return total;
}

double joint_divergence(const FiniteModelSpace& s) {
  const std::vector<double> post = exact_model_posterior(s);
  std::vector<double> terms(s.size());
  for (std::size_t m = 0; m < s.size(); ++m) terms[m] = safe_log(post[m]) - s.kl[m];
  return -log_sum_exp(terms);
}

double joint_divergence_elbo(std::span<const double> prior, std::span<const double> elbo, double log_px) {
  std::vector<double> terms(prior.size());
  for (std::size_t m = 0; m < prior.size(); ++m) terms[m] = safe_log(prior[m]) + elbo[m];
  return log_px - log_sum_exp(terms);
}

double relaxed_bound(const FiniteModelSpace& s) {
  const std::vector<double> post = exact_model_posterior(s);
  double total = 0.0;
  for (std::size_t m = 0; m < s.size(); ++m) {
    if (post[m] > 0.0) total += post[m] * s.kl[m];
  }
  return total;
}

VarianceReport snis_asymptotic_variance(const FiniteModelSpace& s, std::optional<double> delta) {
  const std::vector<double> post = exact_model_posterior(s);
  VarianceReport r;
  for (std::size_t m = 0; m < s.size(); ++m) {
    if (post[m] > 0.0 && s.prior[m] <= 0.0) {
      throw Error(ErrorCode::kZeroPriorSupport,
                  "model " + std::to_string(m) + " has posterior mass but zero prior probability");
    }
    r.mu += post[m] * s.g[m];
  }
  for (std::size_t m = 0; m < s.size(); ++m) {
    if (s.prior[m] <= 0.0) continue;
    const double ratio = post[m] / s.prior[m];
    r.v_n += s.prior[m] * ratio * ratio * (s.g[m] - r.mu) * (s.g[m] - r.mu);
    r.chi2 += post[m] * ratio;
  }
  r.chi2 -= 1.0;
  if (delta) {
    r.delta = delta;
    r.bound = *delta * *delta * (1.0 + r.chi2);
  }
  return r;
}

SnisSimulation simulate_snis(const FiniteModelSpace& s, int n, int replications, std::uint64_t seed,
                             Execution execution) {
  if (n < 2) throw Error(ErrorCode::kBadArg, "simulate_snis needs n >= 2");
  if (replications < 2) throw Error(ErrorCode::kBadArg, "simulate_snis needs at least 2 replications");
  std::vector<double> cumulative(s.size());
  double acc = 0.0;
  for (std::size_t m = 0; m < s.size(); ++m) {
    acc += s.prior[m];
    cumulative[m] = acc;
  }
  const auto reps = static_cast<std::size_t>(replications);
  const auto draws = static_cast<std::size_t>(n);
  std::vector<double> estimates(reps);
  for_each_index(reps, execution, [&](std::size_t r) {
    Rng rng = make_rng(derive_seed(seed, r));
    std::uniform_real_distribution<double> unif(0.0, acc);
    std::vector<std::size_t> picked(draws);
    double max_log = kNegInf;
    for (auto& m : picked) {
      const double u = unif(rng);
      m = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
      m = std::min(m, s.size() - 1);
      max_log = std::max(max_log, s.log_evidence[m]);
    }
    double num = 0.0;
    double den = 0.0;
    for (const auto m : picked) {
      const double w = s.log_evidence[m] == kNegInf ? 0.0 : std::exp(s.log_evidence[m] - max_log);
      num += w * s.g[m];
      den += w;
    }
    estimates[r] = den > 0.0 ? num / den : std::numeric_limits<double>::quiet_NaN();
  });
  const MeanSd ms = mean_sd(estimates);
  return {ms.mean, ms.sd * ms.sd, n, replications};
}

InexactDivergence inexact_divergence(const FiniteModelSpace& s) {
  if (!s.slack) throw Error(ErrorCode::kBadArg, "model space has no slack vector");
  const std::vector<double>& slack = *s.slack;
  const std::vector<double> elbo = s.elbo();
  InexactDivergence out;
  std::vector<double> shifted(s.size());
  for (std::size_t m = 0; m < s.size(); ++m) shifted[m] = elbo[m] - slack[m];
  out.weights = optimal_model_weights_elbo(s.prior, shifted);
  for (std::size_t m = 0; m < s.size(); ++m) out.mean_slack += out.weights[m] * slack[m];

  const std::vector<double> post = exact_model_posterior(s);
  std::vector<double> direct(s.size());
  std::vector<double> via_elbo(s.size());
  for (std::size_t m = 0; m < s.size(); ++m) {
    direct[m] = safe_log(post[m]) - s.kl[m] - slack[m] + out.mean_slack;
    via_elbo[m] = safe_log(s.prior[m]) + elbo[m] - slack[m] + out.mean_slack;
  }
  out.direct = -log_sum_exp(direct);
  out.elbo_form = log_marginal(s) - log_sum_exp(via_elbo);
  return out;
}

bool TheoryReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const TheoryCheck& c) { return c.passed; });
}

TheoryReport run_theory(const FiniteModelSpace& s, const TheoryOptions& opts) {
  s.check();
  TheoryReport r;
  const std::vector<double> elbo = s.elbo();
  r.posterior = exact_model_posterior(s);
  r.optimal_weights = optimal_model_weights(s);
  r.optimal_weights_elbo = optimal_model_weights_elbo(s.prior, elbo);
  r.log_px = log_marginal(s);
  r.joint_divergence = joint_divergence(s);
  r.joint_divergence_elbo = joint_divergence_elbo(s.prior, elbo, r.log_px);
  r.relaxed_bound = relaxed_bound(s);

  double mu = 0.0;
  for (std::size_t m = 0; m < s.size(); ++m) mu += r.posterior[m] * s.g[m];
  double delta = 0.0;
  for (const double g : s.g) delta = std::max(delta, std::abs(g - mu));
  r.variance = snis_asymptotic_variance(s, delta);
  r.simulation = simulate_snis(s, opts.snis_n, opts.snis_replications, opts.seed, opts.execution);

  const auto add = [&](std::string name, bool ok, std::string detail) {
    r.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  const double weight_gap = max_abs_diff(r.optimal_weights, r.optimal_weights_elbo);
  add("optimal_weights_match_elbo_form", weight_gap <= kIdentityTol, "max |diff| = " + fmt(weight_gap));
  const double div_gap = std::abs(r.joint_divergence - r.joint_divergence_elbo);
  add("joint_divergence_matches_elbo_form", div_gap <= kIdentityTol, "|diff| = " + fmt(div_gap));
  add("joint_divergence_nonnegative", r.joint_divergence >= -kIdentityTol, "value = " + fmt(r.joint_divergence));
  const double at_optimum = joint_divergence_at(s, r.optimal_weights);
  add("optimum_attains_joint_divergence", std::abs(at_optimum - r.joint_divergence) <= 1e-10,
      "divergence at optimal weights = " + fmt(at_optimum));
  const double at_posterior = joint_divergence_at(s, r.posterior);
  add("optimal_weights_beat_posterior", at_optimum <= at_posterior + kIdentityTol,
      fmt(at_optimum) + " <= " + fmt(at_posterior));
  add("relaxed_bound_holds", r.relaxed_bound >= r.joint_divergence - kIdentityTol,
      fmt(r.relaxed_bound) + " >= " + fmt(r.joint_divergence));
  add("variance_within_chi2_bound", r.variance.v_n <= *r.variance.bound + 1e-9,
      fmt(r.variance.v_n) + " <= " + fmt(*r.variance.bound));

  const double empirical = static_cast<double>(r.simulation.n) * r.simulation.variance;
  const bool close = r.variance.v_n > 0.0 ? std::abs(empirical - r.variance.v_n) <= 0.15 * r.variance.v_n
                                          : empirical <= 1e-12;
  add("simulated_variance_matches", close,
      "N * variance = " + fmt(empirical) + ", asymptotic = " + fmt(r.variance.v_n));

  FiniteModelSpace constant = s;
  constant.slack = std::vector<double>(s.size(), 1.0);
  const double constant_gap = std::abs(inexact_divergence(constant).direct - r.joint_divergence);
  add("constant_slack_has_no_effect", constant_gap <= kIdentityTol, "|diff| = " + fmt(constant_gap));
  if (s.slack) {
    r.inexact = inexact_divergence(s);
    const double gap = std::abs(r.inexact->direct - r.inexact->elbo_form);
    add("inexact_forms_agree", gap <= kIdentityTol, "|diff| = " + fmt(gap));
    const double attained = joint_divergence_at(s, r.inexact->weights);
    add("inexact_matches_attained_divergence", std::abs(attained - r.inexact->direct) <= 1e-10,
        "divergence at slack-shifted weights = " + fmt(attained));
  }
  return r;
}

std::string theory_report_to_json(const TheoryReport& r) {
  const auto num = [](double v) -> nlohmann::ordered_json {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    return std::stod(fmt(v));
  };
  const auto vec = [&](const std::vector<double>& v) {
    auto arr = nlohmann::ordered_json::array();
    for (const double x : v) arr.push_back(num(x));
    return arr;
  };
  nlohmann::ordered_json j;
  j["posterior"] = vec(r.posterior);
  j["optimal_weights"] = vec(r.optimal_weights);
  j["optimal_weights_elbo"] = vec(r.optimal_weights_elbo);
  j["log_marginal"] = num(r.log_px);
  j["joint_divergence"] = num(r.joint_divergence);
  j["joint_divergence_elbo"] = num(r.joint_divergence_elbo);
  j["relaxed_bound"] = num(r.relaxed_bound);
  j["variance"] = {{"mu", num(r.variance.mu)},
                   {"v_n", num(r.variance.v_n)},
                   {"chi2", num(r.variance.chi2)},
                   {"delta", num(r.variance.delta.value_or(0.0))},
                   {"bound", num(r.variance.bound.value_or(0.0))}};
  j["simulation"] = {{"n", r.simulation.n},
                     {"replications", r.simulation.replications},
                     {"mean", num(r.simulation.mean)},
                     {"variance", num(r.simulation.variance)},
                     {"n_times_variance", num(r.simulation.n * r.simulation.variance)}};
  if (r.inexact) {
    j["inexact"] = {{"weights", vec(r.inexact->weights)},
                    {"mean_slack", num(r.inexact->mean_slack)},
                    {"direct", num(r.inexact->direct)},
                    {"elbo_form", num(r.inexact->elbo_form)}};
  }
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["checks"] = checks;
  j["all_passed"] = r.all_passed();
  return j.dump(2) + "\n";
}

}  // namespace lbayes::theory
