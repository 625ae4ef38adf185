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

#ifndef LBAYES_PROPOSER_LLM_CLIENT_HPP
#define LBAYES_PROPOSER_LLM_CLIENT_HPP

#include <functional>
#include <string>
#include <vector>

#include "lbayes/proposer/config.hpp"
#include "lbayes/proposer/prompt.hpp"
#include "lbayes/proposer/source.hpp"

namespace lbayes {

struct LlmProposal {
  std::vector<ModelSource> sources;  // ordered by request index
  std::vector<int> retries;          // per request
};

using LogFn = std::function<void(const std::string&)>;

/// Sends n chat-completion requests {model, messages, temperature} to
/// cfg.endpoint_url with at most cfg.max_in_flight outstanding. 5xx replies
/// and timeouts are retried up to cfg.max_retries times with exponential
/// backoff. Failures: E_HTTP (non-retryable status or retries exhausted),
/// E_TIMEOUT, E_BAD_RESPONSE (no choices[0].message.content), and
/// E_MISSING_API_KEY when cfg.api_key_env names an unset variable. The API
/// key is never passed to `log`.
LlmProposal llm_propose(const ProposerConfig& cfg, const std::vector<ChatMessage>& messages, int n,
                        const LogFn& log = {});

}  // namespace lbayes

#endif
