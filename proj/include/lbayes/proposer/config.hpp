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

#ifndef LBAYES_PROPOSER_CONFIG_HPP
#define LBAYES_PROPOSER_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>

namespace lbayes {

enum class ProposerMode { kCorpus, kLlm };

struct ProposerConfig {
  ProposerMode mode = ProposerMode::kCorpus;
  std::filesystem::path corpus_dir;
  std::filesystem::path prompt_dir;
  std::string endpoint_url = "http://127.0.0.1:8000/v1/chat/completions";
  std::string api_key_env = "OPENAI_API_KEY";  // empty: send no Authorization header
  std::string model_name = "default";
  double temperature = 1.0;
  int n_candidates = 16;
  std::uint64_t seed = 0;
  int max_in_flight = 8;
  int max_retries = 3;
  int backoff_ms = 500;           // first retry delay; doubles per retry
  int request_timeout_s = 300;

  /// Throws Error(E_INVALID_CONFIG) when a field is out of range.
  void check() const;
};

}  // namespace lbayes

#endif
