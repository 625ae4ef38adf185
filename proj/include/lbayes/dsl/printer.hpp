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

#ifndef LBAYES_DSL_PRINTER_HPP
#define LBAYES_DSL_PRINTER_HPP

#include <string>

#include "lbayes/dsl/ast.hpp"

namespace lbayes::dsl {

/// Canonical text for a model. parse_model(pretty_print(m)) == m.
std::string pretty_print(const ParsedModel& m);

/// Canonical text for one expression, parenthesized only where the tree
/// shape requires it.
std::string print_expr(const Expr& e);

/// Shortest text that reads back to exactly `value`; reals always carry a
/// decimal point or exponent so they stay distinct from integer literals.
std::string format_number(double value, bool is_integer);

}  // namespace lbayes::dsl

#endif
