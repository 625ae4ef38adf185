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

#include "lbayes/pipeline/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "lbayes/error.hpp"
#include "lbayes/io.hpp"

namespace lbayes {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

/// JSON has no infinities; non-finite values become null.
ordered_json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

ordered_json stats_json(const RejectionStats& s) {
  return {{"generated", s.generated},
          {"missing_blocks", s.missing_blocks},
          {"parse_failed", s.parse_failed},
          {"validation_failed", s.validation_failed},
          {"accepted", s.accepted}};
}

ordered_json summaries_json(const std::vector<GoalSummary>& summaries) {
  ordered_json j = ordered_json::object();
  for (const auto& g : summaries) {
    j[g.column] = {{"mean", num(g.summary.mean)},
                   {"sd", num(g.summary.sd)},
                   {"q05", num(g.summary.q05)},
                   {"q50", num(g.summary.q50)},
                   {"q95", num(g.summary.q95)}};
  }
  return j;
}

const char* mode_name(ProposerMode m) { return m == ProposerMode::kCorpus ? "corpus" : "llm"; }

std::string csv_text(const WeightedPosterior& wp) {
  std::ostringstream out;
  write_weighted_csv(out, wp);
  return out.str();
}

}  // namespace

ordered_json config_to_json(const RunConfig& cfg) {
  ordered_json proposer = {{"mode", mode_name(cfg.proposer.mode)}, {"n_candidates", cfg.proposer.n_candidates}};
  if (cfg.proposer.mode == ProposerMode::kCorpus) {
    proposer["corpus"] = cfg.proposer.corpus_dir.filename().string();
  } else {
    proposer["endpoint"] = cfg.proposer.endpoint_url;
    proposer["model_name"] = cfg.proposer.model_name;
    proposer["temperature"] = cfg.proposer.temperature;
    proposer["api_key_env"] = cfg.proposer.api_key_env;
  }
  return {{"problem", cfg.problem_path.filename().string()},
          {"proposer", proposer},
          {"mcmc",
           {{"chains", cfg.mcmc.chains},
            {"iterations", cfg.mcmc.iterations},
            {"warmup", cfg.mcmc.warmup},
            {"target_accept", cfg.mcmc.target_accept}}},
          {"evidence", {{"K", cfg.evidence.K}, {"R", cfg.evidence.R}}},
          {"renormalize_truncation", cfg.density.renormalize_truncation},
          {"master_seed", cfg.master_seed}};
}

ordered_json build_report(const RunResult& r, const RunConfig& cfg) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["problem_id"] = r.problem.id;
  j["stats"] = stats_json(r.filter.stats);

  ordered_json rejected = ordered_json::array();
  for (const auto& rej : r.filter.rejected) {
    rejected.push_back({{"id", rej.id},
                        {"source", rej.origin},
                        {"stage", to_string(rej.stage)},
                        {"code", rej.code ? ordered_json(to_string(*rej.code)) : ordered_json(nullptr)},
                        {"message", rej.message}});
  }
  j["rejected"] = rejected;

  ordered_json failed = ordered_json::array();
  ordered_json per_model = ordered_json::array();
  for (const auto& m : r.models) {
    if (!m.succeeded) {
      failed.push_back({{"id", m.id}, {"code", to_string(*m.failure_code)}, {"reason", m.failure}});
    }
    per_model.push_back({{"id", m.id},
                         {"source", m.origin},
                         {"L", num(m.evidence.value)},
                         {"std_error", num(m.evidence.std_error)},
                         {"K", m.evidence.K},
                         {"R", m.evidence.R},
                         {"weight", m.weight},
                         {"rhat_max", m.succeeded ? num(m.diagnostics.rhat_max()) : ordered_json(nullptr)},
                         {"ess_min", m.succeeded ? num(m.diagnostics.ess_min()) : ordered_json(nullptr)},
                         {"diagnostics_passed", m.succeeded && m.diagnostics.passed},
                         {"accept_rate", num(m.accept_rate)},
                         {"elapsed_ms", m.elapsed_ms},
                         {"status", m.succeeded ? "ok" : "failed"}});
  }
  j["inference_failed"] = failed;
  j["per_model"] = per_model;
  j["weighted_summary"] = summaries_json(r.weighted_summary);
  j["flat_summary"] = summaries_json(r.flat_summary);
  j["weight_ess"] = num(r.weight_ess);

  ordered_json model_seeds_json = ordered_json::array();
  for (const auto& m : r.models) {
    model_seeds_json.push_back({{"id", m.id}, {"mcmc", m.seeds.mcmc}, {"evidence", m.seeds.evidence}});
  }
  j["seeds"] = {{"master", cfg.master_seed}, {"proposer", proposer_seed(cfg.master_seed)}, {"models", model_seeds_json}};
  j["config"] = config_to_json(cfg);
  return j;
}

ordered_json strip_timings(ordered_json j) {
  if (j.is_object()) {
    j.erase("elapsed_ms");
    j.erase("timings");
    for (auto& [key, value] : j.items()) value = strip_timings(value);
  } else if (j.is_array()) {
    for (auto& value : j) value = strip_timings(value);
  }
  return j;
}

void write_run_outputs(const RunResult& r, const RunConfig& cfg) {
  const fs::path& out = cfg.output_dir;
  write_text_file(out / "report.json", build_report(r, cfg).dump(2) + "\n");
  write_text_file(out / "weighted.csv", csv_text(r.weighted));
  write_text_file(out / "flat.csv", csv_text(r.flat));

  ordered_json models = ordered_json::array();
  for (const auto& m : r.models) {
    const fs::path model_file = fs::path("models") / (m.id + ".txt");
    write_text_file(out / model_file, m.model_text);
    ordered_json entry = {{"id", m.id}, {"model", model_file.generic_string()}};
    if (m.samples) {
      const fs::path draws_file = fs::path("draws") / (m.id + ".csv");
      std::ostringstream csv;
      write_draws_csv(csv, *m.samples);
      write_text_file(out / draws_file, csv.str());
      entry["draws"] = draws_file.generic_string();
    }
    entry["elapsed_ms"] = m.elapsed_ms;
    models.push_back(entry);
  }

  ordered_json config = config_to_json(cfg);
  config["problem_path"] = cfg.problem_path.string();
  config["output_dir"] = cfg.output_dir.string();
  config["parallel_models"] = cfg.parallel_models;
  if (cfg.proposer.mode == ProposerMode::kCorpus) config["corpus_dir"] = cfg.proposer.corpus_dir.string();

  ordered_json manifest = {{"version", kVersion},
                           {"report", "report.json"},
                           {"weighted_csv", "weighted.csv"},
                           {"flat_csv", "flat.csv"},
                           {"stats", stats_json(r.filter.stats)},
                           {"models", models},
                           {"config", config},
                           {"timings",
                            {{"propose_ms", r.timings.propose_ms},
                             {"filter_ms", r.timings.filter_ms},
                             {"infer_ms", r.timings.infer_ms},
                             {"total_ms", r.timings.total_ms}}}};
  write_text_file(out / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace lbayes
