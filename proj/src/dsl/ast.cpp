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

#include "lbayes/dsl/ast.hpp"

#include <array>

namespace lbayes::dsl {

namespace {

struct DistInfo {
  Dist dist;
  std::string_view name;
  int arity;
  bool discrete;
};

constexpr std::array<DistInfo, 8> kDists{{
    {Dist::kNormal, "normal", 2, false},
    {Dist::kStudentT, "student_t", 3, false},
    {Dist::kUniform, "uniform", 2, false},
    {Dist::kBeta, "beta", 2, false},
    {Dist::kGamma, "gamma", 2, false},
    {Dist::kExponential, "exponential", 1, false},
    {Dist::kBernoulli, "bernoulli", 1, true},
    {Dist::kBinomial, "binomial", 2, true},
}};

const DistInfo& info(Dist d) { return kDists[static_cast<std::size_t>(d)]; }

}  // namespace

bool same_expr(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Literal>) {
          return x.value == y.value && x.is_integer == y.is_integer;
        } else if constexpr (std::is_same_v<T, NameRef>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return same_expr(x.operand, y.operand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return x.op == y.op && same_expr(x.lhs, y.lhs) && same_expr(x.rhs, y.rhs);
        } else if constexpr (std::is_same_v<T, Index>) {
          return x.name == y.name && same_expr(x.index, y.index);
        } else {
          return x.name == y.name && same_expr(x.first, y.first) && same_expr(x.last, y.last);
        }
      },
      a.node);
}

bool operator==(const Target& a, const Target& b) {
  if (a.name != b.name || a.selector.index() != b.selector.index()) return false;
  if (const auto* ia = std::get_if<ExprPtr>(&a.selector)) {
    return same_expr(*ia, std::get<ExprPtr>(b.selector));
  }
  if (const auto* sa = std::get_if<SliceRange>(&a.selector)) {
    const auto& sb = std::get<SliceRange>(b.selector);
    return same_expr(sa->first, sb.first) && same_expr(sa->last, sb.last);
  }
  return true;
}

bool operator==(const SamplingStatement& a, const SamplingStatement& b) {
  if (!(a.target == b.target) || a.dist != b.dist || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!same_expr(a.args[i], b.args[i])) return false;
  }
  return true;
}

bool operator==(const GoalDecl& a, const GoalDecl& b) { return a.name == b.name && same_expr(a.expr, b.expr); }

ExprPtr make_literal(double value, bool is_integer, SourceLoc loc) {
  return std::make_shared<const Expr>(Expr{Literal{value, is_integer}, loc});
}
ExprPtr make_name(std::string name, SourceLoc loc) {
  return std::make_shared<const Expr>(Expr{NameRef{std::move(name)}, loc});
}
ExprPtr make_negate(ExprPtr operand, SourceLoc loc) {
  return std::make_shared<const Expr>(Expr{Negate{std::move(operand)}, loc});
}
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourceLoc loc) {
  return std::make_shared<const Expr>(Expr{Binary{op, std::move(lhs), std::move(rhs)}, loc});
}
ExprPtr make_index(std::string name, ExprPtr index, SourceLoc loc) {
  return std::make_shared<const Expr>(Expr{Index{std::move(name), std::move(index)}, loc});
}
ExprPtr make_slice(std::string name, ExprPtr first, ExprPtr last, SourceLoc loc) {
  return std::make_shared<const Expr>(Expr{Slice{std::move(name), std::move(first), std::move(last)}, loc});
}

std::string_view dist_name(Dist d) { return info(d).name; }

std::optional<Dist> dist_from_name(std::string_view name) {
  for (const auto& d : kDists) {
    if (d.name == name) return d.dist;
  }
  return std::nullopt;
}

int dist_arity(Dist d) { return info(d).arity; }
bool dist_is_discrete(Dist d) { return info(d).discrete; }

const DataDecl* ParsedModel::find_data(std::string_view name) const {
  for (const auto& d : data_decls) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

const ParamDecl* ParsedModel::find_param(std::string_view name) const {
  for (const auto& p : params) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace lbayes::dsl
