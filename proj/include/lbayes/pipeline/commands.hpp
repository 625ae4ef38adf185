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

#ifndef LBAYES_PIPELINE_COMMANDS_HPP
#define LBAYES_PIPELINE_COMMANDS_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>

#include "lbayes/evidence/bounds.hpp"
#include "lbayes/pipeline/config.hpp"
#include "lbayes/theory/theory.hpp"

namespace lbayes {

/// Subcommand bodies behind the `lbayes` tool. Each writes its human or JSON
/// output to `out`, progress to `err`, and returns the process exit code.
/// Module errors propagate as lbayes::Error.

/// Full pipeline; prints a summary and writes the run directory.
int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Proposes candidates and writes them to <out>/sources/<id>.txt.
int cmd_propose(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Filters every file of `sources_dir` (sorted by name); prints the
/// rejection statistics and reasons as JSON.
int cmd_filter(const std::filesystem::path& sources_dir, std::ostream& out);

/// Loads a model (a bare model block or proposer output with a MODEL block)
/// and a dataset (a JSON file, or the DATA block of a problem file).
struct SingleModelInput {
  std::filesystem::path model_path;
  std::optional<std::filesystem::path> data_path;
  std::optional<std::filesystem::path> problem_path;
};

/// MCMC for one model; prints per-coordinate summaries and diagnostics and
/// optionally writes the draws CSV.
int cmd_infer(const SingleModelInput& input, const RunConfig& cfg,
              const std::optional<std::filesystem::path>& draws_csv, std::ostream& out);

/// MCMC plus the importance-weighted bound for one model.
EvidenceEstimate evidence_for_model(const SingleModelInput& input, const RunConfig& cfg);
int cmd_evidence(const SingleModelInput& input, const RunConfig& cfg, std::ostream& out);

/// SNIS weights and weight ESS for a list of log scores.
int cmd_weigh(std::span<const double> log_scores, std::ostream& out);

/// Human-readable summary of a report.json.
int cmd_report(const std::filesystem::path& report_path, std::ostream& out);

/// Runs the theory checks on a space file and prints the JSON report.
/// Returns 0 when every check passes, 1 otherwise.
int cmd_theory(const std::filesystem::path& space_path, const theory::TheoryOptions& opts, std::ostream& out);

}  // namespace lbayes

#endif
