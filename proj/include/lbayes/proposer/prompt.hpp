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

#ifndef LBAYES_PROPOSER_PROMPT_HPP
#define LBAYES_PROPOSER_PROMPT_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "lbayes/proposer/problem.hpp"

namespace lbayes {

struct ChatMessage {
  std::string role;
  std::string content;

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

/// System prompt plus few-shot (user input, assistant output) pairs.
struct PromptResources {
  std::string system_prompt;
  std::vector<std::pair<std::string, std::string>> examples;
};

/// Loads `<dir>/system_prompt.txt` and every `<dir>/examples/<stem>_input.txt`
/// with its matching `<stem>_output.txt`, ordered by stem. A missing examples
/// directory means no few-shot pairs. Throws Error(E_MISSING_RESOURCE) when the
/// system prompt or half of a pair is missing.
PromptResources load_prompt_resources(const std::filesystem::path& dir);

/// "PROBLEM\n...\nDATA\n...\nGOAL\n..." for one problem.
std::string format_user_message(const ProblemSpec& p);

/// [system] + alternating few-shot user/assistant pairs + [user problem].
std::vector<ChatMessage> assemble_prompt(const ProblemSpec& p, const PromptResources& resources);

/// JSON array [{"role": ..., "content": ...}, ...], pretty-printed with two
/// spaces and a trailing newline.
std::string messages_to_json(const std::vector<ChatMessage>& messages);

}  // namespace lbayes

#endif
