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

#include "lbayes/mcmc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lbayes {

namespace {

struct ChainMoments {
  std::vector<double> means;
  std::vector<double> variances;  // divisor n-1
  double within = 0.0;            // W
  double between = 0.0;           // B
  std::size_t length = 0;
};

/// Halves every chain (dropping the middle draw of odd-length chains).
std::vector<std::vector<double>> split(std::span<const std::vector<double>> chains) {
  std::vector<std::vector<double>> out;
  for (const auto& c : chains) {
    const std::size_t half = c.size() / 2;
    out.emplace_back(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(half));
    out.emplace_back(c.end() - static_cast<std::ptrdiff_t>(half), c.end());
  }
  return out;
}

ChainMoments moments(const std::vector<std::vector<double>>& seqs) {
  ChainMoments mo;
  mo.length = seqs.front().size();
  const auto n = static_cast<double>(mo.length);
  const auto m = static_cast<double>(seqs.size());
  double grand = 0.0;
  for (const auto& s : seqs) {
    double mean = 0.0;
    for (const double v : s) mean += v;
    mean /= n;
    double ss = 0.0;
    for (const double v : s) ss += (v - mean) * (v - mean);
    mo.means.push_back(mean);
    mo.variances.push_back(mo.length > 1 ? ss / (n - 1.0) : 0.0);
    grand += mean;
  }
  grand /= m;
  double bss = 0.0;
  for (const double mean : mo.means) bss += (mean - grand) * (mean - grand);
  mo.between = seqs.size() > 1 ? n * bss / (m - 1.0) : 0.0;
  for (const double v : mo.variances) mo.within += v;
  mo.within /= m;
  return mo;
}

double pooled_variance(const ChainMoments& mo) {
  const auto n = static_cast<double>(mo.length);
  return (n - 1.0) / n * mo.within + mo.between / n;
}

/// Biased autocovariance at `lag` of one sequence about its mean.
double autocovariance(const std::vector<double>& s, double mean, std::size_t lag) {
  double acc = 0.0;
  for (std::size_t i = 0; i + lag < s.size(); ++i) acc += (s[i] - mean) * (s[i + lag] - mean);
  return acc / static_cast<double>(s.size());
}

}  // namespace

double Diagnostics::rhat_max() const {
  double out = 1.0;
  for (const double r : split_rhat) out = std::max(out, r);
  return out;
}

double Diagnostics::ess_min() const {
  if (ess.empty()) return 0.0;
  return *std::min_element(ess.begin(), ess.end());
}

double split_rhat(std::span<const std::vector<double>> chains) {
  const auto seqs = split(chains);
  if (seqs.front().size() < 2) return std::numeric_limits<double>::infinity();
  const ChainMoments mo = moments(seqs);
  if (mo.within <= 0.0) return mo.between <= 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return std::max(1.0, std::sqrt(pooled_variance(mo) / mo.within));
}

double effective_sample_size(std::span<const std::vector<double>> chains) {
  const auto seqs = split(chains);
  const std::size_t n = seqs.front().size();
  const double total = static_cast<double>(n * seqs.size());
  if (n < 4) return 1.0;
  const ChainMoments mo = moments(seqs);
  const double var_plus = pooled_variance(mo);
  if (!(var_plus > 0.0)) return total;

  const auto rho = [&](std::size_t lag) {
    double mean_acov = 0.0;
    for (std::size_t j = 0; j < seqs.size(); ++j) mean_acov += autocovariance(seqs[j], mo.means[j], lag);
    mean_acov /= static_cast<double>(seqs.size());
    return 1.0 - (mo.within - mean_acov) / var_plus;
  };

  // Geyer: sum consecutive pairs while positive, enforcing monotone decrease.
  double tau = -1.0;
  double previous_pair = std::numeric_limits<double>::infinity();
  for (std::size_t lag = 0; lag + 1 < n; lag += 2) {
    double pair = rho(lag) + rho(lag + 1);
    if (pair < 0.0) break;
    pair = std::min(pair, previous_pair);
    previous_pair = pair;
    tau += 2.0 * pair;
  }
  if (!(tau > 0.0)) return total;
  return std::clamp(total / tau, 1.0, total);
}

Diagnostics diagnostics(const PosteriorSamples& s) {
  Diagnostics d;
  std::vector<std::vector<double>> chains(s.chains, std::vector<double>(s.iterations));
  for (std::size_t k = 0; k < s.dim; ++k) {
    for (std::size_t c = 0; c < s.chains; ++c) {
      for (std::size_t i = 0; i < s.iterations; ++i) chains[c][i] = s.constrained_draw(c, i)[k];
    }
    d.split_rhat.push_back(split_rhat(chains));
    d.ess.push_back(effective_sample_size(chains));
  }
  d.passed = std::all_of(d.split_rhat.begin(), d.split_rhat.end(), [](double r) { return r < kRhatThreshold; }) &&
             std::all_of(d.ess.begin(), d.ess.end(), [](double e) { return e > kEssThreshold; });
  return d;
}

}  // namespace lbayes
