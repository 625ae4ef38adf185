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

#include "lbayes/density/log_density.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <optional>

#include "lbayes/density/distributions.hpp"
#include "lbayes/error.hpp"

namespace lbayes {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::string where(const dsl::SourceLoc& loc) {
  return "line " + std::to_string(loc.line) + ", column " + std::to_string(loc.column) + ": ";
}

struct Node;
using NodePtr = std::unique_ptr<Node>;

/// Compiled expression. Shapes are fixed at compile time.
struct Node {
  enum class Kind { kConst, kParam, kNeg, kBin };
  Kind kind = Kind::kConst;
  bool scalar = true;
  std::size_t length = 1;
  std::vector<double> values;  // kConst
  std::size_t offset = 0;      // kParam
  dsl::BinaryOp op = dsl::BinaryOp::kAdd;
  NodePtr a;
  NodePtr b;
};

/// Result of evaluating a node: a scalar, or a view that either aliases
/// constant/parameter storage or points into `owned`.
struct Value {
  bool scalar = true;
  double s = 0.0;
  std::span<const double> view;
  std::vector<double> owned;

  [[nodiscard]] double at(std::size_t i) const { return scalar ? s : view[i]; }
};

double apply(dsl::BinaryOp op, double l, double r) {
  switch (op) {
    case dsl::BinaryOp::kAdd: return l + r;
    case dsl::BinaryOp::kSub: return l - r;
    case dsl::BinaryOp::kMul: return l * r;
    case dsl::BinaryOp::kDiv: return l / r;
  }
  return 0.0;
}

Value eval(const Node& n, std::span<const double> x) {
  Value v;
  switch (n.kind) {
    case Node::Kind::kConst:
      v.scalar = n.scalar;
      if (n.scalar) {
        v.s = n.values[0];
      } else {
        v.view = n.values;
      }
      return v;
    case Node::Kind::kParam:
      v.scalar = n.scalar;
      if (n.scalar) {
        v.s = x[n.offset];
      } else {
        v.view = x.subspan(n.offset, n.length);
      }
      return v;
    case Node::Kind::kNeg: {
      v = eval(*n.a, x);
      if (v.scalar) {
        v.s = -v.s;
        return v;
      }
      if (v.owned.empty()) v.owned.assign(v.view.begin(), v.view.end());
      for (double& e : v.owned) e = -e;
      v.view = v.owned;
      return v;
    }
    case Node::Kind::kBin: {
      Value l = eval(*n.a, x);
      Value r = eval(*n.b, x);
      if (l.scalar && r.scalar) {
        v.s = apply(n.op, l.s, r.s);
        return v;
      }
      v.scalar = false;
      if (!l.scalar && !l.owned.empty()) {
        v.owned = std::move(l.owned);
      } else if (!r.scalar && !r.owned.empty()) {
        v.owned = std::move(r.owned);
      } else {
        v.owned.resize(n.length);
      }
      // Moving a vector keeps its heap buffer, so operand views stay valid.
      for (std::size_t i = 0; i < n.length; ++i) {
        v.owned[i] = apply(n.op, l.at(i), r.at(i));
      }
      v.view = v.owned;
      return v;
    }
  }
  return v;
}

NodePtr make_const(std::vector<double> values, bool scalar) {
  auto n = std::make_unique<Node>();
  n->kind = Node::Kind::kConst;
  n->scalar = scalar;
  n->length = values.size();
  n->values = std::move(values);
  return n;
}

struct CompiledStatement {
  dsl::Dist dist = dsl::Dist::kNormal;
  NodePtr target;
  std::vector<NodePtr> args;
  std::size_t length = 1;
  std::optional<Truncation> trunc;
};

struct CompiledGoal {
  GoalShape shape;
  NodePtr expr;
};

class Compiler {
 public:
  Compiler(const dsl::ParsedModel& m, const Dataset& d, const ParameterSpace& space)
      : m_(m), d_(d), space_(space) {}

  NodePtr compile(const dsl::Expr& e) {
    return std::visit([&](const auto& node) { return compile_node(node, e.loc); }, e.node);
  }

 private:
  NodePtr compile_node(const dsl::Literal& lit, dsl::SourceLoc) { return make_const({lit.value}, true); }

  NodePtr compile_node(const dsl::NameRef& ref, dsl::SourceLoc loc) {
    if (const auto* p = space_.find(ref.name)) {
      auto n = std::make_unique<Node>();
      n->kind = Node::Kind::kParam;
      n->scalar = !p->is_vector;
      n->length = p->length;
      n->offset = p->offset;
      return n;
    }
    const DataValue* v = d_.find(ref.name);
    if (v == nullptr) throw Error(ErrorCode::kUndeclaredName, where(loc) + "unknown name '" + ref.name + "'");
    return make_const(v->values, !v->is_array);
  }

  NodePtr compile_node(const dsl::Negate& neg, dsl::SourceLoc) {
    auto n = std::make_unique<Node>();
    n->kind = Node::Kind::kNeg;
    n->a = compile(*neg.operand);
    n->scalar = n->a->scalar;
    n->length = n->a->length;
    return fold(std::move(n));
  }

  NodePtr compile_node(const dsl::Binary& bin, dsl::SourceLoc loc) {
    auto n = std::make_unique<Node>();
    n->kind = Node::Kind::kBin;
    n->op = bin.op;
    n->a = compile(*bin.lhs);
    n->b = compile(*bin.rhs);
    if (!n->a->scalar && !n->b->scalar && n->a->length != n->b->length) {
      throw Error(ErrorCode::kShapeMismatch, where(loc) + "operands have lengths " + std::to_string(n->a->length) +
                                                 " and " + std::to_string(n->b->length));
    }
    n->scalar = n->a->scalar && n->b->scalar;
    n->length = n->a->scalar ? n->b->length : n->a->length;
    return fold(std::move(n));
  }

  NodePtr compile_node(const dsl::Index& idx, dsl::SourceLoc loc) {
    const std::size_t len = array_length(idx.name, loc);
    const std::size_t i = const_index(*idx.index, len, loc);
    return select(idx.name, i, 1, true);
  }

  NodePtr compile_node(const dsl::Slice& sl, dsl::SourceLoc loc) {
    const std::size_t len = array_length(sl.name, loc);
    const std::size_t first = const_index(*sl.first, len, loc);
    const std::size_t last = const_index(*sl.last, len, loc);
    if (last < first) throw Error(ErrorCode::kBadIndex, where(loc) + "empty slice of '" + sl.name + "'");
    return select(sl.name, first, last - first + 1, false);
  }

  std::size_t array_length(const std::string& name, dsl::SourceLoc loc) const {
    if (const auto* p = space_.find(name)) {
      if (!p->is_vector) throw Error(ErrorCode::kBadIndex, where(loc) + "'" + name + "' is not an array");
      return p->length;
    }
    const DataValue* v = d_.find(name);
    if (v == nullptr || !v->is_array) throw Error(ErrorCode::kBadIndex, where(loc) + "'" + name + "' is not an array");
    return v->values.size();
  }

  /// 1-based index expression -> 0-based offset; must be data-only and integral.
  std::size_t const_index(const dsl::Expr& e, std::size_t len, dsl::SourceLoc loc) {
    const NodePtr n = compile(e);
    if (n->kind != Node::Kind::kConst || !n->scalar) {
      throw Error(ErrorCode::kBadIndex, where(loc) + "index must be a data-only scalar expression");
    }
    const double v = n->values[0];
    if (std::floor(v) != v || v < 1.0 || v > static_cast<double>(len)) {
      throw Error(ErrorCode::kBadIndex, where(loc) + "index " + std::to_string(v) + " out of range 1.." +
                                            std::to_string(len));
    }
    return static_cast<std::size_t>(v) - 1;
  }

  NodePtr select(const std::string& name, std::size_t first, std::size_t count, bool scalar) {
    if (const auto* p = space_.find(name)) {
      auto n = std::make_unique<Node>();
      n->kind = Node::Kind::kParam;
      n->scalar = scalar;
      n->length = count;
      n->offset = p->offset + first;
      return n;
    }
    const auto& values = d_.find(name)->values;
    return make_const(std::vector<double>(values.begin() + static_cast<std::ptrdiff_t>(first),
                                          values.begin() + static_cast<std::ptrdiff_t>(first + count)),
                      scalar);
  }

  static NodePtr fold(NodePtr n) {
    const bool constant = n->a->kind == Node::Kind::kConst && (!n->b || n->b->kind == Node::Kind::kConst);
    if (!constant) return n;
    Value v = eval(*n, {});
    if (v.scalar) return make_const({v.s}, true);
    return make_const(std::vector<double>(v.view.begin(), v.view.end()), false);
  }

  const dsl::ParsedModel& m_;
  const Dataset& d_;
  const ParameterSpace& space_;
};

dsl::ExprPtr target_expr(const dsl::Target& t, dsl::SourceLoc loc) {
  if (const auto* idx = std::get_if<dsl::ExprPtr>(&t.selector)) return dsl::make_index(t.name, *idx, loc);
  if (const auto* sl = std::get_if<dsl::SliceRange>(&t.selector)) {
    return dsl::make_slice(t.name, sl->first, sl->last, loc);
  }
  return dsl::make_name(t.name, loc);
}

}  // namespace

struct LogDensityFn::Impl {
  dsl::ParsedModel model;
  Dataset data;
  DensityOptions options;
  ParameterSpace space;
  std::vector<CompiledStatement> statements;
  std::vector<CompiledGoal> goals;
  std::vector<GoalShape> goal_shapes;
  std::size_t goal_width = 0;

  double log_density(std::span<const double> x) const {
    double total = 0.0;
    std::array<Value, 3> args;
    std::array<double, 3> a{};
    for (const auto& st : statements) {
      const Value t = eval(*st.target, x);
      bool all_scalar = true;
      for (std::size_t j = 0; j < st.args.size(); ++j) {
        args[j] = eval(*st.args[j], x);
        all_scalar = all_scalar && args[j].scalar;
        a[j] = args[j].scalar ? args[j].s : 0.0;
      }
      const std::span<const double> arg_span(a.data(), st.args.size());
      double sum = 0.0;
      if (all_scalar) {
        for (std::size_t i = 0; i < st.length; ++i) sum += log_density_dist(st.dist, arg_span, t.at(i));
        if (st.trunc && sum != kNegInf) {
          const double log_mass = log_truncation_mass(st.dist, arg_span, *st.trunc);
          if (log_mass == kNegInf) return kNegInf;
          sum -= static_cast<double>(st.length) * log_mass;
        }
      } else {
        for (std::size_t i = 0; i < st.length && sum != kNegInf; ++i) {
          for (std::size_t j = 0; j < st.args.size(); ++j) a[j] = args[j].at(i);
          sum += log_density_dist(st.dist, arg_span, t.at(i));
          if (st.trunc && sum != kNegInf) {
            const double log_mass = log_truncation_mass(st.dist, arg_span, *st.trunc);
            if (log_mass == kNegInf) return kNegInf;
            sum -= log_mass;
          }
        }
      }
      total += sum;
      if (!(total > kNegInf)) return kNegInf;
    }
    return std::isfinite(total) ? total : kNegInf;
  }
};

LogDensityFn::LogDensityFn(dsl::ParsedModel model, Dataset data, DensityOptions options) {
  auto impl = std::make_shared<Impl>();
  impl->space = build_parameter_space(model, data);
  impl->options = options;
  Compiler compiler(model, data, impl->space);

  std::map<std::string, std::vector<bool>, std::less<>> coverage;
  for (const auto& s : model.statements) {
    CompiledStatement cs;
    cs.dist = s.dist;
    cs.target = compiler.compile(*target_expr(s.target, s.loc));
    cs.length = cs.target->length;
    for (const auto& arg : s.args) {
      NodePtr n = compiler.compile(*arg);
      if (!n->scalar && (cs.target->scalar || n->length != cs.length)) {
        throw Error(ErrorCode::kShapeMismatch, where(arg->loc) + "argument of length " + std::to_string(n->length) +
                                                   " does not match target of length " + std::to_string(cs.length));
      }
      cs.args.push_back(std::move(n));
    }
    if (const auto* p = impl->space.find(s.target.name)) {
      if ((p->lower || p->upper) && options.renormalize_truncation) {
        if (!supports_truncation(s.dist)) {
          throw Error(ErrorCode::kUnsupportedTruncation,
                      where(s.loc) + "bounded parameter '" + p->name + "' cannot be truncated under " +
                          std::string(dsl::dist_name(s.dist)));
        }
        cs.trunc = Truncation{p->lower, p->upper};
      }
    } else if (cs.target->kind == Node::Kind::kConst) {
      // Data elements must not be sampled twice.
      const auto& all = data.find(s.target.name)->values;
      auto& covered = coverage[s.target.name];
      covered.resize(all.size(), false);
      const auto* idx = std::get_if<dsl::ExprPtr>(&s.target.selector);
      const auto* sl = std::get_if<dsl::SliceRange>(&s.target.selector);
      const auto to_offset = [&](const dsl::ExprPtr& e) {
        return static_cast<std::size_t>(compiler.compile(*e)->values[0]) - 1;
      };
      std::size_t first = 0;
      std::size_t last = all.size() - 1;
      if (idx) {
        first = last = to_offset(*idx);
      } else if (sl) {
        first = to_offset(sl->first);
        last = to_offset(sl->last);
      }
      for (std::size_t i = first; !all.empty() && i <= last; ++i) {
        if (covered[i]) {
          throw Error(ErrorCode::kDoubleSample, where(s.loc) + "element " + std::to_string(i + 1) + " of '" +
                                                    s.target.name + "' is sampled more than once");
        }
        covered[i] = true;
      }
    }
    impl->statements.push_back(std::move(cs));
  }

  for (const auto& g : model.goals) {
    CompiledGoal cg;
    cg.expr = compiler.compile(*g.expr);
    cg.shape = GoalShape{g.name, cg.expr->length, !cg.expr->scalar};
    impl->goal_width += cg.shape.length;
    impl->goal_shapes.push_back(cg.shape);
    impl->goals.push_back(std::move(cg));
  }

  impl->model = std::move(model);
  impl->data = std::move(data);
  impl_ = std::move(impl);
}

const dsl::ParsedModel& LogDensityFn::model() const { return impl_->model; }
const Dataset& LogDensityFn::data() const { return impl_->data; }
const ParameterSpace& LogDensityFn::space() const { return impl_->space; }
std::size_t LogDensityFn::dim() const { return impl_->space.dim; }
const DensityOptions& LogDensityFn::options() const { return impl_->options; }
const std::vector<GoalShape>& LogDensityFn::goal_shapes() const { return impl_->goal_shapes; }
std::size_t LogDensityFn::goal_width() const { return impl_->goal_width; }

std::vector<std::string> LogDensityFn::goal_columns() const {
  std::vector<std::string> cols;
  for (const auto& g : impl_->goal_shapes) {
    if (!g.is_vector) {
      cols.push_back(g.name);
      continue;
    }
    for (std::size_t i = 0; i < g.length; ++i) cols.push_back(g.name + "[" + std::to_string(i + 1) + "]");
  }
  return cols;
}

double LogDensityFn::operator()(std::span<const double> y) const {
  constexpr std::size_t kStack = 32;
  std::array<double, kStack> stack{};
  std::vector<double> heap;
  std::span<double> x;
  if (impl_->space.dim <= kStack) {
    x = std::span<double>(stack.data(), impl_->space.dim);
  } else {
    heap.resize(impl_->space.dim);
    x = heap;
  }
  const double log_jac = from_unconstrained_into(impl_->space, y, x);
  const double lp = impl_->log_density(x);
  if (lp == kNegInf) return kNegInf;
  const double total = lp + log_jac;
  return std::isfinite(total) ? total : kNegInf;
}

double LogDensityFn::log_density_constrained(std::span<const double> constrained) const {
  return impl_->log_density(constrained);
}

void LogDensityFn::eval_goals(std::span<const double> constrained, std::span<double> out) const {
  std::size_t pos = 0;
  for (const auto& g : impl_->goals) {
    const Value v = eval(*g.expr, constrained);
    for (std::size_t i = 0; i < g.shape.length; ++i) out[pos++] = v.at(i);
  }
}

}  // namespace lbayes
