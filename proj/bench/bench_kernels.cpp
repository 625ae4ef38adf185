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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "lbayes/density/dataset.hpp"
#include "lbayes/density/log_density.hpp"
#include "lbayes/dsl/parser.hpp"
#include "lbayes/evidence/bounds.hpp"
#include "lbayes/evidence/proposal.hpp"
#include "lbayes/mcmc/sampler.hpp"
#include "lbayes/theory/theory.hpp"

namespace {

using namespace lbayes;

constexpr const char* kModel = R"(data {
  int N;
  real x[N];
  real y[N];
}
params {
  real alpha;
  real beta;
  real<lower=0> sigma;
}
model {
  alpha ~ normal(0, 10);
  beta ~ normal(0, 10);
  sigma ~ exponential(1);
  y ~ normal(alpha + beta * x, sigma);
}
goal {
  slope = beta;
}
)";

constexpr const char* kData = R"({"N": 12,
  "x": [0.1, 0.5, 0.9, 1.3, 1.8, 2.2, 2.7, 3.1, 3.4, 3.9, 4.4, 4.8],
  "y": [1.2, 1.9, 2.1, 3.0, 3.3, 4.4, 4.9, 5.1, 6.0, 6.3, 7.4, 7.8]})";

Execution execution(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::kSerial : Execution::kParallel;
}

const LogDensityFn& density() {
  static const LogDensityFn f(dsl::parse_model(kModel), parse_dataset(kData));
  return f;
}

const GaussianProposal& proposal() {
  static const GaussianProposal q = [] {
    McmcConfig cfg;
    cfg.iterations = 4000;
    cfg.warmup = 2000;
    cfg.seed = 1;
    return moment_match(sample_posterior(density(), cfg));
  }();
  return q;
}

void BM_SamplePosterior(benchmark::State& state) {
  McmcConfig cfg;
  cfg.chains = 4;
  cfg.iterations = 5000;
  cfg.warmup = 2500;
  cfg.execution = execution(state);
  for (auto _ : state) {
    cfg.seed += 1;
    benchmark::DoNotOptimize(sample_posterior(density(), cfg));
  }
}

void BM_IwElbo(benchmark::State& state) {
  const GaussianProposal& q = proposal();
  EvidenceConfig cfg;
  cfg.execution = execution(state);
  for (auto _ : state) {
    cfg.seed += 1;
    benchmark::DoNotOptimize(iw_elbo(density(), q, cfg));
  }
}

void BM_SimulateSnis(benchmark::State& state) {
  theory::FiniteModelSpace s;
  s.prior = {0.3, 0.25, 0.2, 0.15, 0.1};
  s.log_evidence = {-13.61, -13.33, -14.2, -15.8, -13.9};
  s.kl = {0.02, 0.15, 0.4, 0.05, 0.8};
  s.g = {0.68, 0.64, 0.55, 0.6, 0.7};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(theory::simulate_snis(s, 200, 20000, ++seed, execution(state)));
  }
}

}  // namespace

BENCHMARK(BM_SamplePosterior)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IwElbo)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateSnis)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
