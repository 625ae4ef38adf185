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

#ifndef LBAYES_THEORY_MODEL_SPACE_HPP
#define LBAYES_THEORY_MODEL_SPACE_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lbayes::theory {

/// A finite set of models with everything needed to evaluate the exact
/// weighting formulas: prior p(m), log evidence log p(x|m), the divergence
/// KL(q(z|m) || p(z|x,m)) of each model's variational posterior, the payoff
/// g(m) = E[f(z) | x, m], and optionally the slack between each model's
/// true ELBO and the bound actually used.
struct FiniteModelSpace {
  std::vector<double> prior;
  std::vector<double> log_evidence;
  std::vector<double> kl;
  std::vector<double> g;
  std::optional<std::vector<double>> slack;

  [[nodiscard]] std::size_t size() const { return prior.size(); }

  /// ELBO_m = log p(x|m) - KL_m.
  [[nodiscard]] std::vector<double> elbo() const;

  /// Throws Error(E_BAD_ARG) unless lengths agree, the prior is a
  /// probability vector (sum within 1e-9), and kl/slack are non-negative.
  void check() const;
};

/// Parses {"prior": [...], "log_evidence": [...], "kl": [...], "g": [...],
/// "slack": [...]} ("kl", "g" default to zeros, "slack" is optional).
/// Throws Error(E_PARSE_SPACE) with line and column for malformed JSON and
/// with the field name for invalid content.
FiniteModelSpace parse_space(std::string_view json_text);
FiniteModelSpace load_space(const std::filesystem::path& path);

std::string space_to_json(const FiniteModelSpace& s);

}  // namespace lbayes::theory

#endif
