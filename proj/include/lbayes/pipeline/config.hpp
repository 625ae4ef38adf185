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

#ifndef LBAYES_PIPELINE_CONFIG_HPP
#define LBAYES_PIPELINE_CONFIG_HPP

#include <cstdint>
#include <filesystem>

#include "lbayes/density/log_density.hpp"
#include "lbayes/evidence/bounds.hpp"
#include "lbayes/mcmc/sampler.hpp"
#include "lbayes/proposer/config.hpp"

namespace lbayes {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

struct RunConfig {
  std::filesystem::path problem_path;
  ProposerConfig proposer;
  McmcConfig mcmc;
  EvidenceConfig evidence;
  DensityOptions density;
  int parallel_models = 1;
  std::uint64_t master_seed = 0;
  std::filesystem::path output_dir = "lbayes-out";

  /// Throws Error(E_INVALID_CONFIG) when any field or nested config is invalid.
  void check() const;
};

/// Every stream in a run is derived from the master seed, so the degree of
/// parallelism never changes results.
struct ModelSeeds {
  std::uint64_t mcmc = 0;
  std::uint64_t evidence = 0;
};

std::uint64_t proposer_seed(std::uint64_t master_seed);
ModelSeeds model_seeds(std::uint64_t master_seed, std::size_t model_index);

}  // namespace lbayes

#endif
