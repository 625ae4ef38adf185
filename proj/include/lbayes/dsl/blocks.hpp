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

#ifndef LBAYES_DSL_BLOCKS_HPP
#define LBAYES_DSL_BLOCKS_HPP

#include <optional>
#include <string>
#include <string_view>

namespace lbayes::dsl {

struct ExtractedBlocks {
  std::optional<std::string> thoughts;
  std::optional<std::string> model;
};

/// Splits proposer output on marker lines. A line consisting solely of
/// `THOUGHTS` or `MODEL` (surrounding whitespace allowed) opens that block;
/// THOUGHTS runs until the MODEL marker and MODEL runs to end of input.
/// Markdown code fences directly wrapping the model are dropped. Leading and
/// trailing blank lines are trimmed; interior text is kept byte-for-byte.
ExtractedBlocks extract_blocks(std::string_view raw_text);

}  // namespace lbayes::dsl

#endif
