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

#ifndef LBAYES_DSL_PARSER_HPP
#define LBAYES_DSL_PARSER_HPP

#include <string_view>

#include "lbayes/dsl/ast.hpp"
#include "lbayes/error.hpp"

namespace lbayes::dsl {

/// Thrown by parse_model; carries the 1-based position of the offending token.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, SourceLoc loc, const std::string& message);

  [[nodiscard]] SourceLoc loc() const noexcept { return loc_; }

 private:
  SourceLoc loc_;
};

/// Parses a model block. Comments (`//`, `#`, `/* */`) and whitespace are
/// ignored. Block order is fixed: data, params, model, goal; only `model` is
/// mandatory at the grammar level (a missing goal block is a validation error).
///
/// Names are resolved during parsing, so a successful parse guarantees that
/// every referenced name is declared.
ParsedModel parse_model(std::string_view model_text);

}  // namespace lbayes::dsl

#endif
