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

#include "lbayes/proposer/prompt.hpp"

#include <algorithm>
#include <json.hpp>

#include "lbayes/error.hpp"
#include "lbayes/io.hpp"

namespace lbayes {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kInputSuffix = "_input.txt";
constexpr std::string_view kOutputSuffix = "_output.txt";

std::string read_resource(const fs::path& path) {
  if (!fs::is_regular_file(path)) throw Error(ErrorCode::kMissingResource, "missing prompt resource " + path.string());
  return read_text_file(path);
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

PromptResources load_prompt_resources(const fs::path& dir) {
  PromptResources r;
  r.system_prompt = read_resource(dir / "system_prompt.txt");
  const fs::path examples = dir / "examples";
  if (!fs::is_directory(examples)) return r;

  std::vector<std::string> stems;
  for (const auto& entry : fs::directory_iterator(examples)) {
    const std::string name = entry.path().filename().string();
    if (ends_with(name, kInputSuffix)) stems.push_back(name.substr(0, name.size() - kInputSuffix.size()));
    if (ends_with(name, kOutputSuffix)) {
      const std::string stem = name.substr(0, name.size() - kOutputSuffix.size());
      if (!fs::exists(examples / (stem + std::string(kInputSuffix)))) {
        throw Error(ErrorCode::kMissingResource, "few-shot output without input: " + name);
      }
    }
  }
  std::sort(stems.begin(), stems.end());
  for (const auto& stem : stems) {
    r.examples.emplace_back(read_resource(examples / (stem + std::string(kInputSuffix))),
                            read_resource(examples / (stem + std::string(kOutputSuffix))));
  }
  return r;
}

std::string format_user_message(const ProblemSpec& p) {
  return "PROBLEM\n" + p.problem_text + "\n\nDATA\n" + p.data_text + "\n\nGOAL\n" + p.goal_text + "\n";
}

std::vector<ChatMessage> assemble_prompt(const ProblemSpec& p, const PromptResources& resources) {
  std::vector<ChatMessage> messages;
  messages.push_back({"system", resources.system_prompt});
  for (const auto& [input, output] : resources.examples) {
    messages.push_back({"user", input});
    messages.push_back({"assistant", output});
  }
  messages.push_back({"user", format_user_message(p)});
  return messages;
}

std::string messages_to_json(const std::vector<ChatMessage>& messages) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& m : messages) arr.push_back({{"role", m.role}, {"content", m.content}});
  return arr.dump(2) + "\n";
}

}  // namespace lbayes
