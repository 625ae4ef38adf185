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

#ifndef LBAYES_PROPOSER_FILTER_HPP
#define LBAYES_PROPOSER_FILTER_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lbayes/dsl/ast.hpp"
#include "lbayes/dsl/validate.hpp"
#include "lbayes/error.hpp"
#include "lbayes/proposer/source.hpp"

namespace lbayes {

struct RejectionStats {
  int generated = 0;
  int missing_blocks = 0;
  int parse_failed = 0;
  int validation_failed = 0;
  int accepted = 0;

  friend bool operator==(const RejectionStats&, const RejectionStats&) = default;
};

enum class RejectionStage { kMissingBlocks, kParse, kValidation };

struct Rejection {
  std::string id;
  std::string origin;
  RejectionStage stage;
  std::optional<ErrorCode> code;  // absent for missing blocks
  std::string message;
};

struct AcceptedModel {
  std::string id;
  std::string origin;
  std::string model_text;
  std::optional<std::string> thoughts;
  dsl::ParsedModel model;
  std::vector<dsl::ValidationIssue> warnings;
};

struct FilterResult {
  std::vector<AcceptedModel> accepted;
  std::vector<Rejection> rejected;
  RejectionStats stats;
};

/// extract_blocks -> parse_model -> validate_model for each source, in order.
/// Never throws for bad sources; they land in `rejected` and the stats.
FilterResult filter_valid(std::span<const ModelSource> sources);

std::string_view to_string(RejectionStage stage);

}  // namespace lbayes

#endif
