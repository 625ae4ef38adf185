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

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "lbayes/error.hpp"
#include "lbayes/pipeline/commands.hpp"

namespace {

struct Options {
  lbayes::RunConfig run;
  std::string mode = "corpus";
  bool no_renormalize = false;
  bool serial = false;
  std::string sources_dir;
  std::string model_path;
  std::string data_path;
  std::string draws_path;
  std::string report_path;
  std::string space_path;
  std::vector<double> scores;
  lbayes::theory::TheoryOptions theory;
};

void add_run_options(CLI::App& app, Options& o) {
  auto& r = o.run;
  auto& p = r.proposer;
  app.add_option("--problem", r.problem_path, "Problem file (PROBLEM/DATA/GOAL blocks)");
  app.add_option("--mode", o.mode, "Proposer: corpus or llm")->check(CLI::IsMember({"corpus", "llm"}));
  app.add_option("--corpus", p.corpus_dir, "Directory of candidate files (corpus mode)");
  app.add_option("--prompts", p.prompt_dir, "Prompt resource directory (llm mode)");
  app.add_option("--n-candidates", p.n_candidates, "Number of candidate models to propose")->capture_default_str();
  app.add_option("--endpoint", p.endpoint_url, "Chat-completions URL (llm mode)")->capture_default_str();
  app.add_option("--model-name", p.model_name, "Model name sent to the endpoint")->capture_default_str();
  app.add_option("--api-key-env", p.api_key_env, "Environment variable holding the API key")->capture_default_str();
  app.add_option("--temperature", p.temperature, "Sampling temperature")->capture_default_str();
  app.add_option("--max-in-flight", p.max_in_flight, "Concurrent endpoint requests")->capture_default_str();
  app.add_option("--max-retries", p.max_retries, "Retries for 5xx replies and timeouts")->capture_default_str();
  app.add_option("--chains", r.mcmc.chains, "MCMC chains per model")->capture_default_str();
  app.add_option("--iters", r.mcmc.iterations, "Retained MCMC iterations per chain")->capture_default_str();
  app.add_option("--warmup", r.mcmc.warmup, "Warmup iterations per chain")->capture_default_str();
  app.add_option("--target-accept", r.mcmc.target_accept, "Warmup acceptance target")->capture_default_str();
  app.add_option("--K", r.evidence.K, "Importance samples per bound term")->capture_default_str();
  app.add_option("--R", r.evidence.R, "Repetitions of the bound")->capture_default_str();
  app.add_option("--seed", r.master_seed, "Master seed")->capture_default_str();
  app.add_option("--parallel-models", r.parallel_models, "Models inferred concurrently")->capture_default_str();
  app.add_option("--out", r.output_dir, "Output directory")->capture_default_str();
  app.add_flag("--no-renormalize", o.no_renormalize, "Do not renormalize truncated priors");
  app.add_flag("--serial", o.serial, "Use the serial reference kernels");
}

void finish(Options& o) {
  o.run.proposer.mode = o.mode == "llm" ? lbayes::ProposerMode::kLlm : lbayes::ProposerMode::kCorpus;
  o.run.density.renormalize_truncation = !o.no_renormalize;
  const auto exec = o.serial ? lbayes::Execution::kSerial : lbayes::Execution::kParallel;
  o.run.mcmc.execution = exec;
  o.run.evidence.execution = exec;
  o.theory.execution = exec;
  o.theory.seed = o.run.master_seed;
}

lbayes::SingleModelInput single_input(const Options& o) {
  lbayes::SingleModelInput in;
  in.model_path = o.model_path;
  if (!o.data_path.empty()) in.data_path = o.data_path;
  if (!o.run.problem_path.empty()) in.problem_path = o.run.problem_path;
  return in;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian model averaging over proposed probabilistic models"};
  app.set_config("--config", "", "Key-value config file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  add_run_options(app, o);

  auto* run = app.add_subcommand("run", "Propose, filter, infer, weight and report");
  auto* propose = app.add_subcommand("propose", "Write proposed candidates to <out>/sources");
  auto* filter = app.add_subcommand("filter", "Parse and validate a directory of candidates");
  filter->add_option("sources", o.sources_dir, "Directory of candidate files")->required();
  auto* infer = app.add_subcommand("infer", "Run MCMC for one model");
  auto* evidence = app.add_subcommand("evidence", "Bound the log evidence of one model");
  for (auto* sub : {infer, evidence}) {
    sub->add_option("--model", o.model_path, "Model file")->required();
    sub->add_option("--data", o.data_path, "Dataset JSON (defaults to the DATA block of --problem)");
  }
  infer->add_option("--draws", o.draws_path, "Write constrained draws to this CSV file");
  auto* weigh = app.add_subcommand("weigh", "Turn log evidence values into model weights");
  weigh->add_option("scores", o.scores, "Log evidence per model")->required();
  auto* report = app.add_subcommand("report", "Summarize a run report");
  report->add_option("report", o.report_path, "Path to report.json")->required();
  auto* theory = app.add_subcommand("theory", "Check the weighting identities on a finite model space");
  theory->add_option("space", o.space_path, "Space JSON file")->required();
  theory->add_option("--snis-n", o.theory.snis_n, "Models per simulated SNIS estimate")->capture_default_str();
  theory->add_option("--replications", o.theory.snis_replications, "Simulated SNIS replications")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  finish(o);

  try {
    if (run->parsed()) return lbayes::cmd_run(o.run, std::cout, std::cerr);
    if (propose->parsed()) return lbayes::cmd_propose(o.run, std::cout, std::cerr);
    if (filter->parsed()) return lbayes::cmd_filter(o.sources_dir, std::cout);
    if (infer->parsed()) {
      std::optional<std::filesystem::path> draws;
      if (!o.draws_path.empty()) draws = o.draws_path;
      return lbayes::cmd_infer(single_input(o), o.run, draws, std::cout);
    }
    if (evidence->parsed()) return lbayes::cmd_evidence(single_input(o), o.run, std::cout);
    if (weigh->parsed()) return lbayes::cmd_weigh(o.scores, std::cout);
    if (report->parsed()) return lbayes::cmd_report(o.report_path, std::cout);
    if (theory->parsed()) return lbayes::cmd_theory(o.space_path, o.theory, std::cout);
  } catch (const lbayes::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
