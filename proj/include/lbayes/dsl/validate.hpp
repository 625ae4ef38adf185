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

#ifndef LBAYES_DSL_VALIDATE_HPP
#define LBAYES_DSL_VALIDATE_HPP

#include <string>
#include <vector>

#include "lbayes/dsl/ast.hpp"
#include "lbayes/error.hpp"

namespace lbayes::dsl {

struct ValidationIssue {
  ErrorCode code;
  std::string message;
  SourceLoc loc;
};

struct ValidationReport {
  bool accepted = true;
  std::vector<ValidationIssue> errors;
  std::vector<ValidationIssue> warnings;
};

/// Static checks that keep the joint density normalized:
///  - every parameter has exactly one prior statement (E_NO_PRIOR, E_DOUBLE_SAMPLE);
///  - parameters are sampled as bare names (E_BAD_TARGET);
///  - a data variable sampled whole is sampled only once (E_DOUBLE_SAMPLE);
///  - a goal block is present (E_NO_GOAL);
///  - literal distribution arguments are in their domains (E_BAD_ARG).
/// Declared-but-unsampled data only produces a warning.
ValidationReport validate_model(const ParsedModel& m);

}  // namespace lbayes::dsl

#endif
