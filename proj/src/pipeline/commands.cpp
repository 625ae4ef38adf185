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

#include "lbayes/pipeline/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <string>

#include "lbayes/dsl/blocks.hpp"
#include "lbayes/dsl/parser.hpp"
#include "lbayes/dsl/validate.hpp"
#include "lbayes/ensemble/weights.hpp"
#include "lbayes/error.hpp"
#include "lbayes/evidence/proposal.hpp"
#include "lbayes/io.hpp"
#include "lbayes/mcmc/diagnostics.hpp"
#include "lbayes/pipeline/report.hpp"
#include "lbayes/pipeline/run.hpp"
#include "lbayes/proposer/problem.hpp"
#include "lbayes/theory/model_space.hpp"

namespace lbayes {

namespace fs = std::filesystem;

namespace {

std::string format(const char* spec, double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string json_number(const nlohmann::json& j, const char* spec) {
  return j.is_number() ? format(spec, j.get<double>()) : "-";
}

struct LoadedModel {
  dsl::ParsedModel model;
  Dataset data;
};

LoadedModel load_single_model(const SingleModelInput& input) {
  const std::string text = read_text_file(input.model_path);
  const dsl::ExtractedBlocks blocks = dsl::extract_blocks(text);
  LoadedModel out;
  out.model = dsl::parse_model(blocks.model ? *blocks.model : text);
  const dsl::ValidationReport report = dsl::validate_model(out.model);
  if (!report.accepted) {
    const auto& e = report.errors.front();
    throw Error(e.code, "line " + std::to_string(e.loc.line) + ", column " + std::to_string(e.loc.column) + ": " +
                            e.message);
  }
  if (input.data_path) {
    out.data = load_dataset(*input.data_path);
  } else if (input.problem_path) {
    out.data = load_problem(*input.problem_path).dataset;
  }
  return out;
}

void print_models_table(std::ostream& out, const nlohmann::json& per_model) {
  out << pad("id", 8) << pad("source", 28) << pad("L", 12) << pad("se", 10) << pad("weight", 10) << pad("rhat", 8)
      << pad("ess", 9) << "status\n";
  for (const auto& m : per_model) {
    out << pad(m.value("id", ""), 8) << pad(m.value("source", ""), 28) << pad(json_number(m["L"], "%.4f"), 12)
        << pad(json_number(m["std_error"], "%.4f"), 10) << pad(json_number(m["weight"], "%.4f"), 10)
        << pad(json_number(m["rhat_max"], "%.3f"), 8) << pad(json_number(m["ess_min"], "%.0f"), 9)
        << m.value("status", "") << '\n';
  }
}

void print_summaries(std::ostream& out, const nlohmann::json& report) {
  for (const auto& [goal, w] : report["weighted_summary"].items()) {
    const auto& f = report["flat_summary"][goal];
    out << "goal " << goal << ": weighted mean " << json_number(w["mean"], "%.4f") << " (90% "
        << json_number(w["q05"], "%.4f") << " .. " << json_number(w["q95"], "%.4f") << "), flat mean "
        << json_number(f["mean"], "%.4f") << " (90% " << json_number(f["q05"], "%.4f") << " .. "
        << json_number(f["q95"], "%.4f") << ")\n";
  }
}

void print_report(std::ostream& out, const nlohmann::json& report) {
  const auto& s = report["stats"];
  out << "problem " << report.value("problem_id", "?") << ": generated " << s.value("generated", 0) << ", accepted "
      << s.value("accepted", 0) << " (missing blocks " << s.value("missing_blocks", 0) << ", parse failed "
      << s.value("parse_failed", 0) << ", validation failed " << s.value("validation_failed", 0) << ")\n";
  print_models_table(out, report["per_model"]);
  for (const auto& f : report["inference_failed"]) {
    out << "failed " << f.value("id", "") << ": " << f.value("reason", "") << '\n';
  }
  out << "weight ESS " << json_number(report["weight_ess"], "%.3f") << '\n';
  print_summaries(out, report);
}

}  // namespace

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const RunResult r = run_pipeline(cfg, [&](const std::string& line) { err << line << '\n'; });
  const auto report = nlohmann::json::parse(build_report(r, cfg).dump());
  print_report(out, report);
  out << "wrote " << (cfg.output_dir / "report.json").string() << '\n';
  return 0;
}

int cmd_propose(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.check();
  const ProblemSpec problem = load_problem(cfg.problem_path);
  const std::vector<ModelSource> sources = propose(problem, cfg, [&](const std::string& line) { err << line << '\n'; });
  nlohmann::ordered_json index = nlohmann::ordered_json::array();
  for (const auto& s : sources) {
    write_text_file(cfg.output_dir / "sources" / (s.id + ".txt"), s.raw_text);
    index.push_back({{"id", s.id}, {"origin", s.origin}});
  }
  write_text_file(cfg.output_dir / "sources.json", index.dump(2) + "\n");
  out << "wrote " << sources.size() << " candidates to " << (cfg.output_dir / "sources").string() << '\n';
  return 0;
}

int cmd_filter(const fs::path& sources_dir, std::ostream& out) {
  std::vector<fs::path> files;
  if (fs::is_directory(sources_dir)) {
    for (const auto& e : fs::directory_iterator(sources_dir)) {
      if (e.is_regular_file()) files.push_back(e.path());
    }
  }
  if (files.empty()) throw Error(ErrorCode::kEmptyCorpus, "no files in '" + sources_dir.string() + "'");
  std::sort(files.begin(), files.end());
  std::vector<ModelSource> sources;
  for (std::size_t i = 0; i < files.size(); ++i) {
    sources.push_back({source_id(i), files[i].filename().string(), read_text_file(files[i])});
  }
  const FilterResult r = filter_valid(sources);
  nlohmann::ordered_json j;
  j["stats"] = {{"generated", r.stats.generated},
                {"missing_blocks", r.stats.missing_blocks},
                {"parse_failed", r.stats.parse_failed},
                {"validation_failed", r.stats.validation_failed},
                {"accepted", r.stats.accepted}};
  auto accepted = nlohmann::ordered_json::array();
  for (const auto& a : r.accepted) accepted.push_back(a.origin);
  j["accepted"] = accepted;
  auto rejected = nlohmann::ordered_json::array();
  for (const auto& rej : r.rejected) {
    rejected.push_back({{"source", rej.origin},
                        {"stage", to_string(rej.stage)},
                        {"code", rej.code ? nlohmann::ordered_json(to_string(*rej.code)) : nlohmann::ordered_json()},
                        {"message", rej.message}});
  }
  j["rejected"] = rejected;
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_infer(const SingleModelInput& input, const RunConfig& cfg, const std::optional<fs::path>& draws_csv,
              std::ostream& out) {
  const LoadedModel loaded = load_single_model(input);
  const LogDensityFn f(loaded.model, loaded.data, cfg.density);
  McmcConfig mcmc = cfg.mcmc;
  mcmc.seed = model_seeds(cfg.master_seed, 0).mcmc;
  const PosteriorSamples s = sample_posterior(f, mcmc);
  const Diagnostics d = diagnostics(s);
  const auto names = s.space.coordinate_names();
  out << pad("param", 16) << pad("mean", 12) << pad("sd", 12) << pad("rhat", 8) << "ess\n";
  for (std::size_t k = 0; k < s.dim; ++k) {
    double mean = 0.0;
    for (std::size_t n = 0; n < s.total_draws(); ++n) mean += s.constrained_draw(n)[k];
    mean /= static_cast<double>(s.total_draws());
    double var = 0.0;
    for (std::size_t n = 0; n < s.total_draws(); ++n) {
      const double dv = s.constrained_draw(n)[k] - mean;
      var += dv * dv;
    }
    var /= static_cast<double>(s.total_draws() - 1);
    out << pad(names[k], 16) << pad(format("%.5g", mean), 12) << pad(format("%.5g", std::sqrt(var)), 12)
        << pad(format("%.3f", d.split_rhat[k]), 8) << format("%.0f", d.ess[k]) << '\n';
  }
  out << "accept rate " << format("%.3f", s.mean_accept_rate()) << ", diagnostics "
      << (d.passed ? "passed" : "FAILED") << '\n';
  if (draws_csv) {
    std::ofstream csv(*draws_csv);
    if (!csv) throw Error(ErrorCode::kIo, "cannot open '" + draws_csv->string() + "' for writing");
    write_draws_csv(csv, s);
    out << "wrote " << draws_csv->string() << '\n';
  }
  return 0;
}

EvidenceEstimate evidence_for_model(const SingleModelInput& input, const RunConfig& cfg) {
  const LoadedModel loaded = load_single_model(input);
  const LogDensityFn f(loaded.model, loaded.data, cfg.density);
  const ModelSeeds seeds = model_seeds(cfg.master_seed, 0);
  McmcConfig mcmc = cfg.mcmc;
  mcmc.seed = seeds.mcmc;
  EvidenceConfig evidence = cfg.evidence;
  evidence.seed = seeds.evidence;
  const PosteriorSamples s = sample_posterior(f, mcmc);
  return iw_elbo(f, moment_match(s), evidence);
}

int cmd_evidence(const SingleModelInput& input, const RunConfig& cfg, std::ostream& out) {
  const EvidenceEstimate e = evidence_for_model(input, cfg);
  out << "L = " << format("%.6f", e.value) << " +/- " << format("%.6f", e.std_error) << " nats (K=" << e.K
      << ", R=" << e.R << ")\n";
  return 0;
}

int cmd_weigh(std::span<const double> log_scores, std::ostream& out) {
  const WeightVector w = snis_weights(log_scores);
  for (std::size_t i = 0; i < w.weights.size(); ++i) {
    out << pad(std::to_string(i + 1), 6) << pad(format("%.6f", log_scores[i]), 16) << format("%.6f", w.weights[i])
        << '\n';
  }
  out << "weight ESS " << format("%.4f", weight_ess(w)) << '\n';
  return 0;
}

int cmd_report(const fs::path& report_path, std::ostream& out) {
  const auto report = nlohmann::json::parse(read_text_file(report_path), nullptr, false);
  if (report.is_discarded() || !report.is_object()) {
    throw Error(ErrorCode::kIo, "'" + report_path.string() + "' is not a run report");
  }
  print_report(out, report);
  return 0;
}

int cmd_theory(const fs::path& space_path, const theory::TheoryOptions& opts, std::ostream& out) {
  const theory::FiniteModelSpace space = theory::load_space(space_path);
  const theory::TheoryReport r = theory::run_theory(space, opts);
  out << theory::theory_report_to_json(r);
  return r.all_passed() ? 0 : 1;
}

}  // namespace lbayes
