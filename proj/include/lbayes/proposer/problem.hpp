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

#ifndef LBAYES_PROPOSER_PROBLEM_HPP
#define LBAYES_PROPOSER_PROBLEM_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "lbayes/density/dataset.hpp"

namespace lbayes {

/// User input: three text blocks, the DATA block holding the JSON dataset.
struct ProblemSpec {
  std::string id;
  std::string problem_text;
  std::string data_text;
  std::string goal_text;
  Dataset dataset;
};

/// Parses text where lines "PROBLEM", "DATA" and "GOAL" open the blocks.
/// Throws Error(E_PARSE_PROBLEM) for a missing or empty block and
/// E_DATA_DOMAIN when the DATA block is not a valid dataset.
ProblemSpec parse_problem(std::string_view text, std::string id = "problem");

/// Reads a problem file. The id is the file stem, or the parent directory
/// name when the file is called `problem.txt`.
ProblemSpec load_problem(const std::filesystem::path& path);

}  // namespace lbayes

#endif
