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

#include "lbayes/pipeline/config.hpp"

#include "lbayes/error.hpp"
#include "lbayes/rng.hpp"

namespace lbayes {

void RunConfig::check() const {
  if (parallel_models < 1) throw Error(ErrorCode::kInvalidConfig, "parallel_models must be at least 1");
  proposer.check();
  mcmc.check();
  evidence.check();
}

std::uint64_t proposer_seed(std::uint64_t master_seed) { return derive_seed(master_seed, hash_string("proposer")); }

ModelSeeds model_seeds(std::uint64_t master_seed, std::size_t model_index) {
  const std::uint64_t base = derive_seed(master_seed, hash_string("model"), model_index);
  return {derive_seed(base, hash_string("mcmc")), derive_seed(base, hash_string("evidence"))};
}

}  // namespace lbayes
