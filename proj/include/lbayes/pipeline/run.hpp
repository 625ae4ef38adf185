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

#ifndef LBAYES_PIPELINE_RUN_HPP
#define LBAYES_PIPELINE_RUN_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lbayes/ensemble/posterior.hpp"
#include "lbayes/ensemble/weights.hpp"
#include "lbayes/error.hpp"
#include "lbayes/evidence/bounds.hpp"
#include "lbayes/mcmc/diagnostics.hpp"
#include "lbayes/pipeline/config.hpp"
#include "lbayes/proposer/filter.hpp"
#include "lbayes/proposer/llm_client.hpp"
#include "lbayes/proposer/problem.hpp"

namespace lbayes {

/// Inference result for one accepted model. A failed model keeps its
/// failure code and reason and receives weight 0.
struct ModelOutcome {
  std::string id;
  std::string origin;
  std::string model_text;
  ModelSeeds seeds;
  bool succeeded = false;
  std::optional<ErrorCode> failure_code;
  std::string failure;
  EvidenceEstimate evidence;
  Diagnostics diagnostics;
  double accept_rate = 0.0;
  double elapsed_ms = 0.0;
  double weight = 0.0;
  std::optional<PosteriorSamples> samples;
  ModelGoalDraws goals;
};

struct GoalSummary {
  std::string column;
  Summary summary;
};

struct Timings {
  double propose_ms = 0.0;
  double filter_ms = 0.0;
  double infer_ms = 0.0;
  double total_ms = 0.0;
};

struct RunResult {
  ProblemSpec problem;
  std::vector<ModelSource> sources;
  FilterResult filter;
  std::vector<ModelOutcome> models;  // one per accepted model, in order
  WeightVector weights;              // over successful models, in order
  WeightedPosterior weighted;
  WeightedPosterior flat;
  std::vector<GoalSummary> weighted_summary;
  std::vector<GoalSummary> flat_summary;
  double weight_ess = 0.0;
  Timings timings;

  [[nodiscard]] std::size_t succeeded_count() const;
};

/// MCMC, moment matching and IW-ELBO for one model. Never throws for
/// model-level failures (bad data bindings, E_CANNOT_INITIALIZE,
/// E_DEGENERATE, a -inf bound); those are recorded in the outcome.
ModelOutcome infer_one(const AcceptedModel& model, const Dataset& data, const McmcConfig& mcmc,
                       const EvidenceConfig& evidence, const DensityOptions& density);

/// Runs infer_one for every accepted model (up to cfg.parallel_models at a
/// time), then weights and pools them. Throws Error(E_NO_ACCEPTED_MODELS)
/// when no model survives inference.
RunResult infer_and_combine(ProblemSpec problem, std::vector<ModelSource> sources, FilterResult filter,
                            const RunConfig& cfg);

/// Proposes candidates for `problem` as configured (corpus or endpoint).
std::vector<ModelSource> propose(const ProblemSpec& problem, const RunConfig& cfg, const LogFn& log = {});

/// The whole pipeline: propose, filter, infer, weight, pool, and write the
/// run directory (see write_run_outputs).
RunResult run_pipeline(const RunConfig& cfg, const LogFn& log = {});

}  // namespace lbayes

#endif
