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

#include "lbayes/proposer/corpus.hpp"

#include <algorithm>

#include "lbayes/error.hpp"
#include "lbayes/io.hpp"
#include "lbayes/rng.hpp"

namespace lbayes {

namespace fs = std::filesystem;

void ProposerConfig::check() const {
  if (n_candidates < 1) throw Error(ErrorCode::kInvalidConfig, "n_candidates must be at least 1");
  if (!(temperature >= 0.0)) throw Error(ErrorCode::kInvalidConfig, "temperature must be non-negative");
  if (max_in_flight < 1) throw Error(ErrorCode::kInvalidConfig, "max_in_flight must be at least 1");
  if (max_retries < 0) throw Error(ErrorCode::kInvalidConfig, "max_retries must be non-negative");
  if (backoff_ms < 0) throw Error(ErrorCode::kInvalidConfig, "backoff_ms must be non-negative");
  if (request_timeout_s < 1) throw Error(ErrorCode::kInvalidConfig, "request_timeout_s must be at least 1");
}

std::vector<ModelSource> corpus_propose(const ProposerConfig& cfg, int n) {
  std::vector<fs::path> files;
  if (fs::is_directory(cfg.corpus_dir)) {
    for (const auto& entry : fs::directory_iterator(cfg.corpus_dir)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
  }
  if (files.empty()) throw Error(ErrorCode::kEmptyCorpus, "no candidate files in '" + cfg.corpus_dir.string() + "'");
  std::sort(files.begin(), files.end());

  std::vector<std::string> texts;
  texts.reserve(files.size());
  for (const auto& f : files) texts.push_back(read_text_file(f));

  Rng rng = make_rng(derive_seed(cfg.seed, hash_string("corpus")));
  std::uniform_int_distribution<std::size_t> pick(0, files.size() - 1);
  std::vector<ModelSource> out;
  out.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) {
    const std::size_t j = pick(rng);
    out.push_back({source_id(static_cast<std::size_t>(i)), files[j].filename().string(), texts[j]});
  }
  return out;
}

}  // namespace lbayes
