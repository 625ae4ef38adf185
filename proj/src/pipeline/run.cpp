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

#include "lbayes/pipeline/run.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <thread>

#include "lbayes/evidence/proposal.hpp"
#include "lbayes/pipeline/report.hpp"
#include "lbayes/proposer/corpus.hpp"
#include "lbayes/proposer/prompt.hpp"

namespace lbayes {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<GoalSummary> summarize(const WeightedPosterior& wp) {
  std::vector<GoalSummary> out;
  for (const auto& column : wp.columns) out.push_back({column, weighted_summary(wp, column)});
  return out;
}

}  // namespace

std::size_t RunResult::succeeded_count() const {
  std::size_t n = 0;
  for (const auto& m : models) n += m.succeeded ? 1 : 0;
  return n;
}

ModelOutcome infer_one(const AcceptedModel& model, const Dataset& data, const McmcConfig& mcmc,
                       const EvidenceConfig& evidence, const DensityOptions& density) {
  ModelOutcome out;
  out.id = model.id;
  out.origin = model.origin;
  out.model_text = model.model_text;
  out.seeds = {mcmc.seed, evidence.seed};
  out.evidence.K = evidence.K;
  out.evidence.R = evidence.R;
  const auto start = Clock::now();
  try {
    const LogDensityFn f(model.model, data, density);
    PosteriorSamples samples = sample_posterior(f, mcmc);
    out.diagnostics = diagnostics(samples);
    out.accept_rate = samples.mean_accept_rate();
    const GaussianProposal q = moment_match(samples);
    out.evidence = iw_elbo(f, q, evidence);
    if (!std::isfinite(out.evidence.value)) {
      throw Error(ErrorCode::kAllInvalid, "every importance sample of some repetition had zero density");
    }
    out.goals = extract_goal_draws(model.id, f, samples);
    out.samples = std::move(samples);
    out.succeeded = true;
  } catch (const Error& e) {
    out.succeeded = false;
    out.failure_code = e.code();
    out.failure = e.what();
  }
  out.elapsed_ms = ms_since(start);
  return out;
}

RunResult infer_and_combine(ProblemSpec problem, std::vector<ModelSource> sources, FilterResult filter,
                            const RunConfig& cfg) {
  RunResult r;
  r.problem = std::move(problem);
  r.sources = std::move(sources);
  r.filter = std::move(filter);

  std::map<std::string, std::size_t, std::less<>> source_index;
  for (std::size_t i = 0; i < r.sources.size(); ++i) source_index.emplace(r.sources[i].id, i);

  const auto& accepted = r.filter.accepted;
  r.models.resize(accepted.size());
  const Execution inner = cfg.parallel_models > 1 ? Execution::kSerial : cfg.mcmc.execution;
  const auto run_index = [&](std::size_t i) {
    const auto it = source_index.find(accepted[i].id);
    const ModelSeeds seeds = model_seeds(cfg.master_seed, it == source_index.end() ? i : it->second);
    McmcConfig mcmc = cfg.mcmc;
    mcmc.seed = seeds.mcmc;
    mcmc.execution = inner;
    EvidenceConfig evidence = cfg.evidence;
    evidence.seed = seeds.evidence;
    evidence.execution = cfg.parallel_models > 1 ? Execution::kSerial : cfg.evidence.execution;
    r.models[i] = infer_one(accepted[i], r.problem.dataset, mcmc, evidence, cfg.density);
  };

  const auto start = Clock::now();
  if (cfg.parallel_models <= 1) {
    for (std::size_t i = 0; i < accepted.size(); ++i) run_index(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    const auto workers = std::min<std::size_t>(accepted.size(), static_cast<std::size_t>(cfg.parallel_models));
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        for (std::size_t i = next++; i < accepted.size(); i = next++) run_index(i);
      });
    }
  }
  r.timings.infer_ms = ms_since(start);

  // Pooling needs a common goal layout; the first successful model sets it.
  const ModelOutcome* reference = nullptr;
  for (auto& m : r.models) {
    if (!m.succeeded) continue;
    if (reference == nullptr) {
      reference = &m;
    } else if (m.goals.shapes != reference->goals.shapes) {
      m.succeeded = false;
      m.failure_code = ErrorCode::kGoalShapeMismatch;
      m.failure = "E_GOAL_SHAPE_MISMATCH: goals differ from those of model '" + reference->id + "'";
    }
  }

  std::vector<double> scores;
  std::vector<ModelGoalDraws> pooled;
  for (const auto& m : r.models) {
    if (!m.succeeded) continue;
    scores.push_back(m.evidence.value);
    pooled.push_back(m.goals);
  }
  if (scores.empty()) {
    throw Error(ErrorCode::kNoAcceptedModels, std::to_string(r.filter.stats.accepted) +
                                                  " models passed the filter but none completed inference");
  }
  r.weights = snis_weights(scores);
  std::size_t k = 0;
  for (auto& m : r.models) m.weight = m.succeeded ? r.weights.weights[k++] : 0.0;
  r.weighted = combine(pooled, r.weights);
  r.flat = flat_average(pooled);
  r.weighted_summary = summarize(r.weighted);
  r.flat_summary = summarize(r.flat);
  r.weight_ess = weight_ess(r.weights);
  return r;
}

std::vector<ModelSource> propose(const ProblemSpec& problem, const RunConfig& cfg, const LogFn& log) {
  ProposerConfig pc = cfg.proposer;
  pc.seed = proposer_seed(cfg.master_seed);
  if (pc.mode == ProposerMode::kCorpus) return corpus_propose(pc, pc.n_candidates);
  const PromptResources resources = load_prompt_resources(pc.prompt_dir);
  return llm_propose(pc, assemble_prompt(problem, resources), pc.n_candidates, log).sources;
}

RunResult run_pipeline(const RunConfig& cfg, const LogFn& log) {
  cfg.check();
  const auto start = Clock::now();
  ProblemSpec problem = load_problem(cfg.problem_path);

  auto t = Clock::now();
  std::vector<ModelSource> sources = propose(problem, cfg, log);
  const double propose_ms = ms_since(t);

  t = Clock::now();
  FilterResult filter = filter_valid(sources);
  const double filter_ms = ms_since(t);
  if (log) {
    const auto& s = filter.stats;
    log("generated " + std::to_string(s.generated) + ", accepted " + std::to_string(s.accepted) +
        " (missing blocks " + std::to_string(s.missing_blocks) + ", parse failed " + std::to_string(s.parse_failed) +
        ", validation failed " + std::to_string(s.validation_failed) + ")");
  }
  if (filter.accepted.empty()) throw Error(ErrorCode::kNoAcceptedModels, "no candidate passed the filter");

  RunResult r = infer_and_combine(std::move(problem), std::move(sources), std::move(filter), cfg);
  r.timings.propose_ms = propose_ms;
  r.timings.filter_ms = filter_ms;
  r.timings.total_ms = ms_since(start);
  write_run_outputs(r, cfg);
  return r;
}

}  // namespace lbayes
