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

#include "lbayes/dsl/blocks.hpp"

#include <vector>

namespace lbayes::dsl {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::optional<std::string> join_trimmed(const std::vector<std::string_view>& lines, std::size_t first,
                                        std::size_t last) {
  while (first < last && trim(lines[first]).empty()) ++first;
  while (last > first && trim(lines[last - 1]).empty()) --last;
  std::string out;
  for (std::size_t i = first; i < last; ++i) {
    if (i != first) out += '\n';
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out += line;
  }
  return out;
}

bool is_fence(std::string_view line) { return trim(line).substr(0, 3) == "```"; }

}  // namespace

ExtractedBlocks extract_blocks(std::string_view raw_text) {
  const auto lines = split_lines(raw_text);
  std::optional<std::size_t> thoughts_line;
  std::optional<std::size_t> model_line;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto t = trim(lines[i]);
    if (t == "THOUGHTS" && !thoughts_line && !model_line) thoughts_line = i;
    if (t == "MODEL" && !model_line) model_line = i;
  }

  ExtractedBlocks out;
  if (thoughts_line) {
    out.thoughts = join_trimmed(lines, *thoughts_line + 1, model_line ? *model_line : lines.size());
  }
  if (model_line) {
    std::size_t first = *model_line + 1;
    std::size_t last = lines.size();
    while (first < last && trim(lines[first]).empty()) ++first;
    while (last > first && trim(lines[last - 1]).empty()) --last;
    if (first < last && is_fence(lines[first])) {
      ++first;
      if (last > first && is_fence(lines[last - 1])) --last;
    }
    out.model = join_trimmed(lines, first, last);
  }
  return out;
}

}  // namespace lbayes::dsl
