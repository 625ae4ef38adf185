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

#ifndef LBAYES_PROPOSER_CORPUS_HPP
#define LBAYES_PROPOSER_CORPUS_HPP

#include <vector>

#include "lbayes/proposer/config.hpp"
#include "lbayes/proposer/source.hpp"

namespace lbayes {

/// Draws n files uniformly with replacement from cfg.corpus_dir (regular
/// files, sorted by name) using cfg.seed. Ids are "m0001", "m0002", ...
/// Throws Error(E_EMPTY_CORPUS) when the directory has no files.
std::vector<ModelSource> corpus_propose(const ProposerConfig& cfg, int n);

}  // namespace lbayes

#endif
