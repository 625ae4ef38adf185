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

#include "lbayes/theory/model_space.hpp"

#include <cmath>
#include <json.hpp>

#include "lbayes/error.hpp"
#include "lbayes/io.hpp"

namespace lbayes::theory {

namespace {

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::vector<double> read_vector(const nlohmann::json& j, const char* field) {
  if (!j.is_array()) throw Error(ErrorCode::kParseSpace, std::string("field '") + field + "' must be an array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (v.is_number()) {
      out.push_back(v.get<double>());
    } else if (v.is_string() && (v.get<std::string>() == "-inf" || v.get<std::string>() == "-Infinity")) {
      out.push_back(-INFINITY);
    } else {
      throw Error(ErrorCode::kParseSpace, std::string("field '") + field + "' must contain numbers");
    }
  }
  return out;
}

nlohmann::ordered_json write_vector(const std::vector<double>& v) {
  auto arr = nlohmann::ordered_json::array();
  for (const double x : v) {
    if (std::isinf(x) && x < 0) {
      arr.push_back("-inf");
    } else {
      arr.push_back(x);
    }
  }
  return arr;
}

}  // namespace

std::vector<double> FiniteModelSpace::elbo() const {
  std::vector<double> out(size());
  for (std::size_t m = 0; m < size(); ++m) out[m] = log_evidence[m] - kl[m];
  return out;
}

void FiniteModelSpace::check() const {
  const std::size_t n = prior.size();
  if (n == 0) throw Error(ErrorCode::kBadArg, "model space is empty");
  if (log_evidence.size() != n || kl.size() != n || g.size() != n || (slack && slack->size() != n)) {
    throw Error(ErrorCode::kBadArg, "model space vectors must all have length " + std::to_string(n));
  }
  double total = 0.0;
  for (const double p : prior) {
    if (!(p >= 0.0)) throw Error(ErrorCode::kBadArg, "prior entries must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw Error(ErrorCode::kBadArg, "prior must sum to 1");
  for (const double k : kl) {
    if (!(k >= 0.0)) throw Error(ErrorCode::kBadArg, "kl entries must be non-negative");
  }
  for (const double v : log_evidence) {
    if (std::isnan(v) || v == INFINITY) throw Error(ErrorCode::kBadArg, "log_evidence entries must be finite or -inf");
  }
  for (const double v : g) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kBadArg, "g entries must be finite");
  }
  if (slack) {
    for (const double d : *slack) {
      if (!(d >= 0.0) || !std::isfinite(d)) throw Error(ErrorCode::kBadArg, "slack entries must be non-negative");
    }
  }
}

FiniteModelSpace parse_space(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParseSpace, line_column(json_text, e.byte) + ": malformed JSON");
  }
  if (!j.is_object()) throw Error(ErrorCode::kParseSpace, "space file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "prior" && key != "log_evidence" && key != "kl" && key != "g" && key != "slack") {
      throw Error(ErrorCode::kParseSpace, "unknown field '" + key + "'");
    }
  }
  if (!j.contains("prior") || !j.contains("log_evidence")) {
    throw Error(ErrorCode::kParseSpace, "fields 'prior' and 'log_evidence' are required");
  }
  FiniteModelSpace s;
  s.prior = read_vector(j["prior"], "prior");
  s.log_evidence = read_vector(j["log_evidence"], "log_evidence");
  s.kl = j.contains("kl") ? read_vector(j["kl"], "kl") : std::vector<double>(s.prior.size(), 0.0);
  s.g = j.contains("g") ? read_vector(j["g"], "g") : std::vector<double>(s.prior.size(), 0.0);
  if (j.contains("slack")) s.slack = read_vector(j["slack"], "slack");
  try {
    s.check();
  } catch (const Error& e) {
    throw Error(ErrorCode::kParseSpace, std::string(e.detail()));
  }
  return s;
}

FiniteModelSpace load_space(const std::filesystem::path& path) { return parse_space(read_text_file(path)); }

std::string space_to_json(const FiniteModelSpace& s) {
  nlohmann::ordered_json j;
  j["prior"] = write_vector(s.prior);
  j["log_evidence"] = write_vector(s.log_evidence);
  j["kl"] = write_vector(s.kl);
  j["g"] = write_vector(s.g);
  if (s.slack) j["slack"] = write_vector(*s.slack);
  return j.dump(2) + "\n";
}

}  // namespace lbayes::theory
