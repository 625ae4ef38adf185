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

#include "lbayes/proposer/filter.hpp"

#include "lbayes/dsl/blocks.hpp"
#include "lbayes/dsl/parser.hpp"

namespace lbayes {

std::string_view to_string(RejectionStage stage) {
  switch (stage) {
    case RejectionStage::kMissingBlocks: return "missing_blocks";
    case RejectionStage::kParse: return "parse_failed";
    case RejectionStage::kValidation: return "validation_failed";
  }
  return "";
}

FilterResult filter_valid(std::span<const ModelSource> sources) {
  FilterResult out;
  for (const auto& src : sources) {
    ++out.stats.generated;
    dsl::ExtractedBlocks blocks = dsl::extract_blocks(src.raw_text);
    if (!blocks.model || blocks.model->empty()) {
      ++out.stats.missing_blocks;
      out.rejected.push_back({src.id, src.origin, RejectionStage::kMissingBlocks, std::nullopt, "no MODEL block"});
      continue;
    }
    dsl::ParsedModel model;
    try {
      model = dsl::parse_model(*blocks.model);
    } catch (const Error& e) {
      ++out.stats.parse_failed;
      out.rejected.push_back({src.id, src.origin, RejectionStage::kParse, e.code(), e.what()});
      continue;
    }
    dsl::ValidationReport report = dsl::validate_model(model);
    if (!report.accepted) {
      ++out.stats.validation_failed;
      const auto& first = report.errors.front();
      out.rejected.push_back({src.id, src.origin, RejectionStage::kValidation, first.code,
                              std::string(lbayes::to_string(first.code)) + ": " + first.message});
      continue;
    }
    ++out.stats.accepted;
    out.accepted.push_back({src.id, src.origin, std::move(*blocks.model), std::move(blocks.thoughts), std::move(model),
                            std::move(report.warnings)});
  }
  return out;
}

}  // namespace lbayes
