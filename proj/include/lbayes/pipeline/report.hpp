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

#ifndef LBAYES_PIPELINE_REPORT_HPP
#define LBAYES_PIPELINE_REPORT_HPP

#include <filesystem>
#include <json.hpp>
#include <string>

#include "lbayes/pipeline/run.hpp"

namespace lbayes {

/// Config echo without machine-local paths or the degree of parallelism,
/// neither of which affects results.
nlohmann::ordered_json config_to_json(const RunConfig& cfg);

/// The run report. Contains per-model elapsed_ms; everything else is a pure
/// function of the inputs and the config.
nlohmann::ordered_json build_report(const RunResult& r, const RunConfig& cfg);

/// Removes every "elapsed_ms" and "timings" member, recursively.
nlohmann::ordered_json strip_timings(nlohmann::ordered_json j);

/// Writes report.json, manifest.json, weighted.csv, flat.csv and per-model
/// models/<id>.txt and draws/<id>.csv under cfg.output_dir.
void write_run_outputs(const RunResult& r, const RunConfig& cfg);

}  // namespace lbayes

#endif
