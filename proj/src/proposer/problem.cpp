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

#include "lbayes/proposer/problem.hpp"

#include <array>
#include <optional>

#include "lbayes/error.hpp"
#include "lbayes/io.hpp"

namespace lbayes {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

ProblemSpec parse_problem(std::string_view text, std::string id) {
  constexpr std::array<std::string_view, 3> kMarkers = {"PROBLEM", "DATA", "GOAL"};
  std::array<std::optional<std::string>, 3> blocks;
  int current = -1;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    const std::string_view line = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
    ++line_no;
    int marker = -1;
    for (int i = 0; i < 3; ++i) {
      if (trim(line) == kMarkers[static_cast<std::size_t>(i)]) marker = i;
    }
    if (marker >= 0) {
      if (blocks[static_cast<std::size_t>(marker)]) {
        throw Error(ErrorCode::kParseProblem,
                    "line " + std::to_string(line_no) + ": duplicate " + std::string(kMarkers[static_cast<std::size_t>(marker)]) +
                        " block");
      }
      blocks[static_cast<std::size_t>(marker)].emplace();
      current = marker;
    } else if (current >= 0) {
      auto& b = *blocks[static_cast<std::size_t>(current)];
      b.append(line);
      b.push_back('\n');
    } else if (!trim(line).empty()) {
      throw Error(ErrorCode::kParseProblem, "line " + std::to_string(line_no) + ": text before the PROBLEM block");
    }
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  ProblemSpec p;
  p.id = std::move(id);
  std::array<std::string*, 3> fields = {&p.problem_text, &p.data_text, &p.goal_text};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!blocks[i] || trim(*blocks[i]).empty()) {
      throw Error(ErrorCode::kParseProblem, "missing or empty " + std::string(kMarkers[i]) + " block");
    }
    *fields[i] = std::string(trim(*blocks[i]));
  }
  p.dataset = parse_dataset(p.data_text);
  return p;
}

ProblemSpec load_problem(const std::filesystem::path& path) {
  std::string id = path.stem().string();
  if (id == "problem" && path.has_parent_path()) {
    const auto parent = std::filesystem::absolute(path).parent_path().filename().string();
    if (!parent.empty()) id = parent;
  }
  return parse_problem(read_text_file(path), id);
}

}  // namespace lbayes
