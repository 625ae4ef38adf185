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

#include "lbayes/dsl/validate.hpp"

#include <cmath>
#include <map>
#include <optional>

namespace lbayes::dsl {

namespace {

/// Value of an expression built only from literals, or nullopt.
std::optional<double> fold_constant(const Expr& e) {
  if (const auto* lit = std::get_if<Literal>(&e.node)) return lit->value;
  if (const auto* neg = std::get_if<Negate>(&e.node)) {
    const auto v = fold_constant(*neg->operand);
    return v ? std::optional<double>(-*v) : std::nullopt;
  }
  if (const auto* b = std::get_if<Binary>(&e.node)) {
    const auto l = fold_constant(*b->lhs);
    const auto r = fold_constant(*b->rhs);
    if (!l || !r) return std::nullopt;
    switch (b->op) {
      case BinaryOp::kAdd: return *l + *r;
      case BinaryOp::kSub: return *l - *r;
      case BinaryOp::kMul: return *l * *r;
      case BinaryOp::kDiv: return *l / *r;
    }
  }
  return std::nullopt;
}

enum class Domain { kAny, kPositive, kUnitInterval, kCount };

Domain arg_domain(Dist d, std::size_t i) {
  switch (d) {
    case Dist::kNormal: return i == 1 ? Domain::kPositive : Domain::kAny;
    case Dist::kStudentT: return i == 1 ? Domain::kAny : Domain::kPositive;
    case Dist::kUniform: return Domain::kAny;
    case Dist::kBeta:
    case Dist::kGamma:
    case Dist::kExponential: return Domain::kPositive;
    case Dist::kBernoulli: return Domain::kUnitInterval;
    case Dist::kBinomial: return i == 0 ? Domain::kCount : Domain::kUnitInterval;
  }
  return Domain::kAny;
}

bool in_domain(Domain dom, double v) {
  switch (dom) {
    case Domain::kAny: return std::isfinite(v);
    case Domain::kPositive: return std::isfinite(v) && v > 0.0;
    case Domain::kUnitInterval: return v >= 0.0 && v <= 1.0;
    case Domain::kCount: return v >= 0.0 && std::floor(v) == v;
  }
  return false;
}

const char* domain_text(Domain dom) {
  switch (dom) {
    case Domain::kAny: return "finite";
    case Domain::kPositive: return "positive";
    case Domain::kUnitInterval: return "in [0, 1]";
    case Domain::kCount: return "a non-negative integer";
  }
  return "";
}

}  // namespace

ValidationReport validate_model(const ParsedModel& m) {
  ValidationReport report;
  auto error = [&](ErrorCode code, std::string msg, SourceLoc loc) {
    report.errors.push_back({code, std::move(msg), loc});
  };

  std::map<std::string, int, std::less<>> param_priors;
  std::map<std::string, int, std::less<>> data_bare;
  std::map<std::string, int, std::less<>> data_selected;
  for (const auto& s : m.statements) {
    const bool is_param = m.find_param(s.target.name) != nullptr;
    if (is_param) {
      ++param_priors[s.target.name];
      if (!s.target.is_bare()) {
        error(ErrorCode::kBadTarget, "parameter '" + s.target.name + "' must be sampled as a bare name", s.loc);
      }
      if (dist_is_discrete(s.dist)) {
        error(ErrorCode::kBadTarget,
              "parameter '" + s.target.name + "' cannot follow discrete " + std::string(dist_name(s.dist)), s.loc);
      }
    } else {
      ++(s.target.is_bare() ? data_bare : data_selected)[s.target.name];
      const DataDecl* d = m.find_data(s.target.name);
      if (d != nullptr && dist_is_discrete(s.dist) && d->type != ScalarType::kInt) {
        error(ErrorCode::kBadTarget,
              "real data '" + s.target.name + "' cannot follow discrete " + std::string(dist_name(s.dist)), s.loc);
      }
    }

    for (std::size_t i = 0; i < s.args.size(); ++i) {
      const Domain dom = arg_domain(s.dist, i);
      if (const auto v = fold_constant(*s.args[i]); v && !in_domain(dom, *v)) {
        error(ErrorCode::kBadArg,
              "argument " + std::to_string(i + 1) + " of " + std::string(dist_name(s.dist)) + " must be " +
                  domain_text(dom),
              s.args[i]->loc);
      }
    }
    if (s.dist == Dist::kUniform) {
      const auto lo = fold_constant(*s.args[0]);
      const auto hi = fold_constant(*s.args[1]);
      if (lo && hi && !(*lo < *hi)) error(ErrorCode::kBadArg, "uniform requires lower < upper", s.loc);
    }
  }

  for (const auto& p : m.params) {
    const int n = param_priors[p.name];
    if (n == 0) {
      error(ErrorCode::kNoPrior, "parameter '" + p.name + "' has no prior statement", p.loc);
    } else if (n > 1) {
      error(ErrorCode::kDoubleSample,
            "parameter '" + p.name + "' is sampled " + std::to_string(n) + " times", p.loc);
    }
  }
  for (const auto& d : m.data_decls) {
    const int bare = data_bare[d.name];
    const int selected = data_selected[d.name];
    if (bare > 1 || (bare == 1 && selected > 0)) {
      error(ErrorCode::kDoubleSample, "data '" + d.name + "' is sampled more than once", d.loc);
    } else if (bare == 0 && selected == 0) {
      report.warnings.push_back(
          {ErrorCode::kNoPrior, "data '" + d.name + "' is never sampled (treated as fixed)", d.loc});
    }
  }

  if (m.goals.empty()) error(ErrorCode::kNoGoal, "model has no goal block", {});

  report.accepted = report.errors.empty();
  return report;
}

}  // namespace lbayes::dsl
