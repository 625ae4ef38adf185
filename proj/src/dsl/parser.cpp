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

#include "lbayes/dsl/parser.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <string>
#include <vector>

namespace lbayes::dsl {

ParseError::ParseError(ErrorCode code, SourceLoc loc, const std::string& message)
    : Error(code, "line " + std::to_string(loc.line) + ", column " + std::to_string(loc.column) + ": " + message),
      loc_(loc) {}

namespace {

enum class Tok { kName, kInt, kReal, kPunct, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  SourceLoc loc;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::kEnd) return "end of input";
  return "'" + t.text + "'";
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  int col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
      const SourceLoc start{line, col};
      advance(2);
      while (i < src.size() && !(src[i] == '*' && i + 1 < src.size() && src[i + 1] == '/')) advance(1);
      if (i >= src.size()) throw ParseError(ErrorCode::kSyntax, start, "unterminated block comment");
      advance(2);
      continue;
    }
    Token t;
    t.loc = {line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::kName;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i;
      bool real = false;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') {
        real = true;
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          real = true;
          j = k;
          while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        }
      }
      t.kind = real ? Tok::kReal : Tok::kInt;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::string_view("{}()[]<>,;~=+-*/:").find(c) != std::string_view::npos) {
      t.kind = Tok::kPunct;
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw ParseError(ErrorCode::kSyntax, t.loc, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.loc = {line, col};
  out.push_back(end);
  return out;
}

double to_number(const Token& t) {
  double v = 0.0;
  const auto* first = t.text.data();
  const auto* last = first + t.text.size();
  // from_chars does not accept a leading '.', which the lexer allows.
  std::string buf;
  if (!t.text.empty() && t.text.front() == '.') {
    buf = "0" + t.text;
    first = buf.data();
    last = first + buf.size();
  }
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw ParseError(ErrorCode::kSyntax, t.loc, "malformed number " + describe(t));
  }
  return v;
}

enum class NameKind { kIntScalarData, kData, kParam, kGoal };

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ParsedModel parse() {
    ParsedModel m;
    if (peek_keyword("data")) {
      next();
      expect("{");
      while (!peek_punct("}")) m.data_decls.push_back(parse_data_decl());
      expect("}");
    }
    if (peek_keyword("params")) {
      next();
      expect("{");
      while (!peek_punct("}")) m.params.push_back(parse_param_decl());
      expect("}");
    }
    if (!peek_keyword("model")) fail_expected("'data', 'params' or 'model' block");
    next();
    expect("{");
    while (!peek_punct("}")) m.statements.push_back(parse_statement());
    expect("}");
    if (peek_keyword("goal")) {
      next();
      expect("{");
      while (!peek_punct("}")) m.goals.push_back(parse_goal());
      expect("}");
    }
    if (cur().kind != Tok::kEnd) fail_expected("end of input");
    return m;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool peek_punct(std::string_view p) const { return cur().kind == Tok::kPunct && cur().text == p; }
  bool peek_keyword(std::string_view k) const { return cur().kind == Tok::kName && cur().text == k; }

  [[noreturn]] void fail_expected(const std::string& what) const {
    throw ParseError(ErrorCode::kSyntax, cur().loc, "expected " + what + ", found " + describe(cur()));
  }

  void expect(std::string_view p) {
    if (!peek_punct(p)) fail_expected("'" + std::string(p) + "'");
    next();
  }

  Token expect_name(const char* what) {
    if (cur().kind != Tok::kName) fail_expected(what);
    return next();
  }

  void declare(const Token& name, NameKind kind) {
    if (scope_.count(name.text) != 0) {
      throw ParseError(ErrorCode::kSyntax, name.loc, "duplicate declaration of '" + name.text + "'");
    }
    scope_.emplace(name.text, kind);
  }

  /// Data and parameters are visible in expressions; goals are not.
  void require_visible(const std::string& name, SourceLoc loc) const {
    const auto it = scope_.find(name);
    if (it == scope_.end() || it->second == NameKind::kGoal) {
      throw ParseError(ErrorCode::kUndeclaredName, loc, "undeclared name '" + name + "'");
    }
  }

  Extent parse_extent(bool allow_empty) {
    expect("[");
    Extent e;
    if (cur().kind == Tok::kInt) {
      const Token t = next();
      const long long n = static_cast<long long>(to_number(t));
      if (n < (allow_empty ? 0 : 1)) {
        throw ParseError(ErrorCode::kSyntax, t.loc, "array length must be at least " + std::to_string(allow_empty ? 0 : 1));
      }
      e = n;
    } else if (cur().kind == Tok::kName) {
      const Token t = next();
      const auto it = scope_.find(t.text);
      if (it == scope_.end()) {
        throw ParseError(ErrorCode::kUndeclaredName, t.loc, "undeclared name '" + t.text + "'");
      }
      if (it->second != NameKind::kIntScalarData) {
        throw ParseError(ErrorCode::kSyntax, t.loc, "array length '" + t.text + "' must be an int data scalar");
      }
      e = t.text;
    } else {
      fail_expected("array length");
    }
    expect("]");
    return e;
  }

  DataDecl parse_data_decl() {
    DataDecl d;
    d.loc = cur().loc;
    if (peek_keyword("int")) {
      d.type = ScalarType::kInt;
    } else if (peek_keyword("real")) {
      d.type = ScalarType::kReal;
    } else {
      fail_expected("'int' or 'real'");
    }
    next();
    const Token name = expect_name("data name");
    d.name = name.text;
    if (peek_punct("[")) d.extent = parse_extent(true);
    if (peek_keyword("in")) {
      const Token in = next();
      if (d.type != ScalarType::kInt) {
        throw ParseError(ErrorCode::kSyntax, in.loc, "'in {0,1}' requires int data");
      }
      expect("{");
      if (cur().kind != Tok::kInt || cur().text != "0") fail_expected("'0'");
      next();
      expect(",");
      if (cur().kind != Tok::kInt || cur().text != "1") fail_expected("'1'");
      next();
      expect("}");
      d.binary_domain = true;
    }
    expect(";");
    declare(name, d.type == ScalarType::kInt && !d.extent ? NameKind::kIntScalarData : NameKind::kData);
    return d;
  }

  double parse_signed_number() {
    bool negative = false;
    if (peek_punct("-")) {
      next();
      negative = true;
    }
    if (cur().kind != Tok::kInt && cur().kind != Tok::kReal) fail_expected("number");
    const double v = to_number(next());
    return negative ? -v : v;
  }

  ParamDecl parse_param_decl() {
    ParamDecl p;
    p.loc = cur().loc;
    if (peek_keyword("int")) {
      throw ParseError(ErrorCode::kSyntax, cur().loc, "parameters must be real-valued");
    }
    if (!peek_keyword("real")) fail_expected("'real'");
    next();
    if (peek_punct("<")) {
      next();
      for (;;) {
        const Token which = expect_name("'lower' or 'upper'");
        expect("=");
        const double v = parse_signed_number();
        if (which.text == "lower" && !p.lower) {
          p.lower = v;
        } else if (which.text == "upper" && !p.upper) {
          p.upper = v;
        } else {
          throw ParseError(ErrorCode::kSyntax, which.loc, "unexpected bound " + describe(which));
        }
        if (peek_punct(",")) {
          next();
          continue;
        }
        break;
      }
      expect(">");
      if (p.lower && p.upper && !(*p.lower < *p.upper)) {
        throw ParseError(ErrorCode::kSyntax, p.loc, "lower bound must be strictly below upper bound");
      }
    }
    const Token name = expect_name("parameter name");
    p.name = name.text;
    if (peek_punct("[")) p.extent = parse_extent(false);
    expect(";");
    declare(name, NameKind::kParam);
    return p;
  }

  SamplingStatement parse_statement() {
    SamplingStatement s;
    s.loc = cur().loc;
    const Token name = expect_name("sampling target");
    s.target.name = name.text;
    if (peek_punct("[")) {
      next();
      ExprPtr first = parse_expr();
      if (peek_punct(":")) {
        next();
        ExprPtr last = parse_expr();
        s.target.selector = SliceRange{std::move(first), std::move(last)};
      } else {
        s.target.selector = std::move(first);
      }
      expect("]");
    }
    expect("~");
    require_visible(name.text, name.loc);
    const Token dist = expect_name("distribution name");
    const auto d = dist_from_name(dist.text);
    if (!d) throw ParseError(ErrorCode::kUnknownDist, dist.loc, "unknown distribution '" + dist.text + "'");
    s.dist = *d;
    expect("(");
    s.args.push_back(parse_expr());
    while (peek_punct(",")) {
      next();
      s.args.push_back(parse_expr());
    }
    expect(")");
    if (static_cast<int>(s.args.size()) != dist_arity(s.dist)) {
      throw ParseError(ErrorCode::kSyntax, dist.loc,
                       std::string(dist_name(s.dist)) + " takes " + std::to_string(dist_arity(s.dist)) +
                           " arguments, got " + std::to_string(s.args.size()));
    }
    expect(";");
    return s;
  }

  GoalDecl parse_goal() {
    GoalDecl g;
    g.loc = cur().loc;
    const Token name = expect_name("goal name");
    g.name = name.text;
    expect("=");
    g.expr = parse_expr();
    expect(";");
    declare(name, NameKind::kGoal);
    return g;
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    while (peek_punct("+") || peek_punct("-")) {
      const Token op = next();
      ExprPtr rhs = parse_term();
      lhs = make_binary(op.text == "+" ? BinaryOp::kAdd : BinaryOp::kSub, std::move(lhs), std::move(rhs), op.loc);
    }
    return lhs;
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_unary();
    while (peek_punct("*") || peek_punct("/")) {
      const Token op = next();
      ExprPtr rhs = parse_unary();
      lhs = make_binary(op.text == "*" ? BinaryOp::kMul : BinaryOp::kDiv, std::move(lhs), std::move(rhs), op.loc);
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (peek_punct("-")) {
      const Token op = next();
      return make_negate(parse_unary(), op.loc);
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    const Token& t = cur();
    if (t.kind == Tok::kInt || t.kind == Tok::kReal) {
      const Token num = next();
      return make_literal(to_number(num), num.kind == Tok::kInt, num.loc);
    }
    if (t.kind == Tok::kName) {
      const Token name = next();
      require_visible(name.text, name.loc);
      if (peek_punct("[")) {
        next();
        ExprPtr first = parse_expr();
        if (peek_punct(":")) {
          next();
          ExprPtr last = parse_expr();
          expect("]");
          return make_slice(name.text, std::move(first), std::move(last), name.loc);
        }
        expect("]");
        return make_index(name.text, std::move(first), name.loc);
      }
      return make_name(name.text, name.loc);
    }
    if (peek_punct("(")) {
      next();
      ExprPtr e = parse_expr();
      expect(")");
      return e;
    }
    fail_expected("expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, NameKind, std::less<>> scope_;
};

}  // namespace

ParsedModel parse_model(std::string_view model_text) {
  Parser parser(lex(model_text));
  return parser.parse();
}

}  // namespace lbayes::dsl
