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

#ifndef LBAYES_DSL_AST_HPP
#define LBAYES_DSL_AST_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lbayes::dsl {

struct SourceLoc {
  int line = 0;
  int column = 0;
};

enum class BinaryOp { kAdd, kSub, kMul, kDiv };

struct Expr;
/// Expressions are immutable once built, so subtrees are shared freely.
using ExprPtr = std::shared_ptr<const Expr>;

struct Literal {
  double value = 0.0;
  bool is_integer = false;
};

struct NameRef {
  std::string name;
};

struct Negate {
  ExprPtr operand;
};

struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

/// `name[index]`, 1-based.
struct Index {
  std::string name;
  ExprPtr index;
};

/// `name[first:last]`, 1-based and inclusive on both ends.
struct Slice {
  std::string name;
  ExprPtr first;
  ExprPtr last;
};

struct Expr {
  std::variant<Literal, NameRef, Negate, Binary, Index, Slice> node;
  SourceLoc loc;
};

bool operator==(const Expr& a, const Expr& b);
bool same_expr(const ExprPtr& a, const ExprPtr& b);

ExprPtr make_literal(double value, bool is_integer, SourceLoc loc = {});
ExprPtr make_name(std::string name, SourceLoc loc = {});
ExprPtr make_negate(ExprPtr operand, SourceLoc loc = {});
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourceLoc loc = {});
ExprPtr make_index(std::string name, ExprPtr index, SourceLoc loc = {});
ExprPtr make_slice(std::string name, ExprPtr first, ExprPtr last, SourceLoc loc = {});

/// Calls `fn(name)` for every variable name referenced in `e`.
template <class Fn>
void for_each_name(const Expr& e, Fn&& fn);

enum class Dist { kNormal, kStudentT, kUniform, kBeta, kGamma, kExponential, kBernoulli, kBinomial };

std::string_view dist_name(Dist d);
std::optional<Dist> dist_from_name(std::string_view name);
int dist_arity(Dist d);
bool dist_is_discrete(Dist d);

enum class ScalarType { kInt, kReal };

/// Array length: an integer literal or the name of an int data scalar.
using Extent = std::variant<long long, std::string>;

struct DataDecl {
  std::string name;
  ScalarType type = ScalarType::kReal;
  std::optional<Extent> extent;
  bool binary_domain = false;  // `in {0,1}`
  SourceLoc loc;

  friend bool operator==(const DataDecl& a, const DataDecl& b) {
    return a.name == b.name && a.type == b.type && a.extent == b.extent && a.binary_domain == b.binary_domain;
  }
};

struct ParamDecl {
  std::string name;
  std::optional<Extent> extent;
  std::optional<double> lower;
  std::optional<double> upper;
  SourceLoc loc;

  friend bool operator==(const ParamDecl& a, const ParamDecl& b) {
    return a.name == b.name && a.extent == b.extent && a.lower == b.lower && a.upper == b.upper;
  }
};

struct SliceRange {
  ExprPtr first;
  ExprPtr last;
};

/// Left-hand side of `~`. Parameters must be bare names; data may select an
/// element or a contiguous range.
struct Target {
  std::string name;
  std::variant<std::monostate, ExprPtr, SliceRange> selector;

  [[nodiscard]] bool is_bare() const { return std::holds_alternative<std::monostate>(selector); }
};

bool operator==(const Target& a, const Target& b);

struct SamplingStatement {
  Target target;
  Dist dist = Dist::kNormal;
  std::vector<ExprPtr> args;
  SourceLoc loc;
};

bool operator==(const SamplingStatement& a, const SamplingStatement& b);

struct GoalDecl {
  std::string name;
  ExprPtr expr;
  SourceLoc loc;
};

bool operator==(const GoalDecl& a, const GoalDecl& b);

struct ParsedModel {
  std::vector<DataDecl> data_decls;
  std::vector<ParamDecl> params;
  std::vector<SamplingStatement> statements;
  std::vector<GoalDecl> goals;

  [[nodiscard]] const DataDecl* find_data(std::string_view name) const;
  [[nodiscard]] const ParamDecl* find_param(std::string_view name) const;

  friend bool operator==(const ParsedModel& a, const ParsedModel& b) = default;
};

// ---------------------------------------------------------------------------

template <class Fn>
void for_each_name(const Expr& e, Fn&& fn) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NameRef>) {
          fn(n.name);
        } else if constexpr (std::is_same_v<T, Negate>) {
          for_each_name(*n.operand, fn);
        } else if constexpr (std::is_same_v<T, Binary>) {
          for_each_name(*n.lhs, fn);
          for_each_name(*n.rhs, fn);
        } else if constexpr (std::is_same_v<T, Index>) {
          fn(n.name);
          for_each_name(*n.index, fn);
        } else if constexpr (std::is_same_v<T, Slice>) {
          fn(n.name);
          for_each_name(*n.first, fn);
          for_each_name(*n.last, fn);
        }
      },
      e.node);
}

}  // namespace lbayes::dsl

#endif
