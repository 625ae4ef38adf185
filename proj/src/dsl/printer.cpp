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

#include "lbayes/dsl/printer.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace lbayes::dsl {

namespace {

constexpr int kPrecAdd = 1;
constexpr int kPrecMul = 2;
constexpr int kPrecUnary = 3;
constexpr int kPrecPrimary = 4;

int precedence(const Expr& e) {
  if (const auto* b = std::get_if<Binary>(&e.node)) {
    return (b->op == BinaryOp::kAdd || b->op == BinaryOp::kSub) ? kPrecAdd : kPrecMul;
  }
  if (std::holds_alternative<Negate>(e.node)) return kPrecUnary;
  return kPrecPrimary;
}

char op_char(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd: return '+';
    case BinaryOp::kSub: return '-';
    case BinaryOp::kMul: return '*';
    case BinaryOp::kDiv: return '/';
  }
  return '?';
}

std::string wrap_if(bool cond, std::string s) { return cond ? "(" + s + ")" : s; }

std::string format_extent(const Extent& e) {
  if (const auto* n = std::get_if<long long>(&e)) return std::to_string(*n);
  return std::get<std::string>(e);
}

std::string format_bound(double v) {
  const bool integral = std::floor(v) == v && std::abs(v) < 1e15;
  return format_number(v, integral);
}

}  // namespace

std::string format_number(double value, bool is_integer) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  std::string s(buf, res.ptr);
  if (!is_integer && s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string print_expr(const Expr& e) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Literal>) {
          return format_number(n.value, n.is_integer);
        } else if constexpr (std::is_same_v<T, NameRef>) {
          return n.name;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return "-" + wrap_if(precedence(*n.operand) < kPrecUnary, print_expr(*n.operand));
        } else if constexpr (std::is_same_v<T, Binary>) {
          const int p = precedence(e);
          // Right operands of equal precedence need parentheses to keep the
          // left-associative tree shape on re-parse.
          return wrap_if(precedence(*n.lhs) < p, print_expr(*n.lhs)) + " " + op_char(n.op) + " " +
                 wrap_if(precedence(*n.rhs) <= p, print_expr(*n.rhs));
        } else if constexpr (std::is_same_v<T, Index>) {
          return n.name + "[" + print_expr(*n.index) + "]";
        } else {
          return n.name + "[" + print_expr(*n.first) + ":" + print_expr(*n.last) + "]";
        }
      },
      e.node);
}

std::string pretty_print(const ParsedModel& m) {
  std::ostringstream out;
  if (!m.data_decls.empty()) {
    out << "data {\n";
    for (const auto& d : m.data_decls) {
      out << "  " << (d.type == ScalarType::kInt ? "int " : "real ") << d.name;
      if (d.extent) out << "[" << format_extent(*d.extent) << "]";
      if (d.binary_domain) out << " in {0,1}";
      out << ";\n";
    }
    out << "}\n";
  }
  if (!m.params.empty()) {
    out << "params {\n";
    for (const auto& p : m.params) {
      out << "  real";
      if (p.lower || p.upper) {
        out << "<";
        if (p.lower) out << "lower=" << format_bound(*p.lower);
        if (p.lower && p.upper) out << ",";
        if (p.upper) out << "upper=" << format_bound(*p.upper);
        out << ">";
      }
      out << " " << p.name;
      if (p.extent) out << "[" << format_extent(*p.extent) << "]";
      out << ";\n";
    }
    out << "}\n";
  }
  out << "model {\n";
  for (const auto& s : m.statements) {
    out << "  " << s.target.name;
    if (const auto* idx = std::get_if<ExprPtr>(&s.target.selector)) {
      out << "[" << print_expr(**idx) << "]";
    } else if (const auto* sl = std::get_if<SliceRange>(&s.target.selector)) {
      out << "[" << print_expr(*sl->first) << ":" << print_expr(*sl->last) << "]";
    }
    out << " ~ " << dist_name(s.dist) << "(";
    for (std::size_t i = 0; i < s.args.size(); ++i) {
      if (i != 0) out << ", ";
      out << print_expr(*s.args[i]);
    }
    out << ");\n";
  }
  out << "}\n";
  if (!m.goals.empty()) {
    out << "goal {\n";
    for (const auto& g : m.goals) out << "  " << g.name << " = " << print_expr(*g.expr) << ";\n";
    out << "}\n";
  }
  return out.str();
}

}  // namespace lbayes::dsl
