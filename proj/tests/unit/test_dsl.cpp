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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "lbayes/dsl/blocks.hpp"
#include "lbayes/dsl/parser.hpp"
#include "lbayes/dsl/printer.hpp"
#include "lbayes/dsl/validate.hpp"
#include "lbayes/proposer/filter.hpp"
#include "support/paths.hpp"

namespace lbayes::dsl {
namespace {

constexpr const char* kCoin =
    "data{int N; int y[N] in {0,1};} params{real<lower=0,upper=1> theta;} "
    "model{theta ~ beta(2,2); y ~ bernoulli(theta);} goal{z = theta;}";

ErrorCode parse_code(std::string_view text) {
  try {
    parse_model(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "parse succeeded: " << text;
  return ErrorCode::kIo;
}

bool has_error(const ValidationReport& r, ErrorCode code) {
  for (const auto& e : r.errors) {
    if (e.code == code) return true;
  }
  return false;
}

std::vector<std::filesystem::path> gate_files() {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(test::data_path("fixtures/gate"))) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

TEST(ExtractBlocks, SplitsThoughtsAndModel) {
  const auto b = extract_blocks("THOUGHTS\nuse a beta prior\nMODEL\nparams{...}");
  ASSERT_TRUE(b.thoughts && b.model);
  EXPECT_EQ(*b.thoughts, "use a beta prior");
  EXPECT_EQ(*b.model, "params{...}");
}

TEST(ExtractBlocks, NoMarkers) {
  const auto b = extract_blocks("no markers at all");
  EXPECT_FALSE(b.thoughts);
  EXPECT_FALSE(b.model);
}

TEST(ExtractBlocks, MarkersMustStandAlone) {
  const auto b = extract_blocks("MODEL block follows\nTHOUGHTS: none\nparams{}");
  EXPECT_FALSE(b.thoughts);
  EXPECT_FALSE(b.model);
}

TEST(ExtractBlocks, DropsCodeFences) {
  const auto b = extract_blocks("MODEL\n```\nmodel { }\n```\n");
  ASSERT_TRUE(b.model);
  EXPECT_EQ(*b.model, "model { }");
}

TEST(ExtractBlocks, FewShotOutputMatchesGolden) {
  const auto raw = test::read_file(test::data_path("prompts/examples/01_weights_output.txt"));
  const auto b = extract_blocks(raw);
  ASSERT_TRUE(b.model && b.thoughts);
  EXPECT_EQ(*b.model, test::read_file(test::golden_path("weights_model_block.txt")));
  EXPECT_EQ(*b.thoughts, test::read_file(test::golden_path("weights_thoughts_block.txt")));
}

TEST(ParseModel, MinimalCoinModel) {
  const auto m = parse_model(kCoin);
  ASSERT_EQ(m.data_decls.size(), 2u);
  ASSERT_EQ(m.params.size(), 1u);
  ASSERT_EQ(m.statements.size(), 2u);
  ASSERT_EQ(m.goals.size(), 1u);
  EXPECT_EQ(m.data_decls[1].name, "y");
  EXPECT_TRUE(m.data_decls[1].binary_domain);
  EXPECT_EQ(m.data_decls[1].extent, Extent{std::string("N")});
  EXPECT_EQ(m.params[0].lower, 0.0);
  EXPECT_EQ(m.params[0].upper, 1.0);
  EXPECT_EQ(m.statements[0].dist, Dist::kBeta);
  EXPECT_EQ(m.statements[1].target.name, "y");
  EXPECT_EQ(m.goals[0].name, "z");
}

TEST(ParseModel, UndeclaredSampleTarget) {
  EXPECT_EQ(parse_code("params{real x;} model{y ~ normal(0,1);}"), ErrorCode::kUndeclaredName);
}

TEST(ParseModel, ErrorCodesAndPositions) {
  EXPECT_EQ(parse_code("params{real x;} model{x ~ lognormal(0,1);}"), ErrorCode::kUnknownDist);
  EXPECT_EQ(parse_code("params{real x;} model{x ~ normal(0,1)}"), ErrorCode::kSyntax);
  EXPECT_EQ(parse_code("params{real x;} model{x ~ normal(0);}"), ErrorCode::kSyntax);
  EXPECT_EQ(parse_code("params{real x;} model{target += x;}"), ErrorCode::kSyntax);
  EXPECT_EQ(parse_code("params{real<lower=1,upper=0> x;} model{x ~ normal(0,1);}"), ErrorCode::kSyntax);
  try {
    parse_model("params {\n  real x;\n}\nmodel {\n  x ~ normal(0, 1)\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.loc().line, 6);
    EXPECT_EQ(e.loc().column, 1);
    EXPECT_NE(std::string(e.what()).find("expected ';'"), std::string::npos);
  }
}

TEST(ParseModel, IgnoresCommentsAndWhitespace) {
  const auto a = parse_model(kCoin);
  const auto b = parse_model(
      "// coin\ndata {\n  int N;   # count\n  int y[N] in {0,1};\n}\n/* prior */ params { real<lower=0, upper=1> theta; }\n"
      "model { theta ~ beta(2, 2);\n y ~ bernoulli(theta); }\ngoal { z = theta; }\n");
  EXPECT_EQ(a, b);
}

TEST(Validate, CoinAccepted) {
  const auto r = validate_model(parse_model(kCoin));
  EXPECT_TRUE(r.accepted);
  EXPECT_TRUE(r.errors.empty());
}

TEST(Validate, DoubleSample) {
  const auto r = validate_model(parse_model(
      "data{int N; int y[N] in {0,1};} params{real<lower=0,upper=1> theta;} "
      "model{theta ~ beta(2,2); theta ~ normal(0,1); y ~ bernoulli(theta);} goal{z = theta;}"));
  EXPECT_FALSE(r.accepted);
  EXPECT_TRUE(has_error(r, ErrorCode::kDoubleSample));
}

TEST(Validate, MissingGoal) {
  const auto r = validate_model(parse_model("params{real x;} model{x ~ normal(0,1);}"));
  EXPECT_FALSE(r.accepted);
  EXPECT_TRUE(has_error(r, ErrorCode::kNoGoal));
}

TEST(Validate, MissingPriorAndBadArgument) {
  const auto no_prior = validate_model(parse_model("params{real x; real y;} model{x ~ normal(0,1);} goal{z = x;}"));
  EXPECT_TRUE(has_error(no_prior, ErrorCode::kNoPrior));
  const auto bad = validate_model(parse_model("params{real x;} model{x ~ normal(0,-1);} goal{z = x;}"));
  EXPECT_TRUE(has_error(bad, ErrorCode::kBadArg));
  const auto bad_beta = validate_model(parse_model("params{real x;} model{x ~ beta(0,1);} goal{z = x;}"));
  EXPECT_TRUE(has_error(bad_beta, ErrorCode::kBadArg));
}

TEST(Validate, TargetsAndDomains) {
  const auto indexed = validate_model(
      parse_model("params{real x[2];} model{x[1] ~ normal(0,1);} goal{z = x[1];}"));
  EXPECT_TRUE(has_error(indexed, ErrorCode::kBadTarget));
  const auto discrete_param = validate_model(parse_model("params{real p;} model{p ~ bernoulli(0.5);} goal{z = p;}"));
  EXPECT_TRUE(has_error(discrete_param, ErrorCode::kBadTarget));
  const auto real_data = validate_model(parse_model(
      "data{real y;} params{real<lower=0,upper=1> p;} model{p ~ beta(1,1); y ~ bernoulli(p);} goal{z = p;}"));
  EXPECT_TRUE(has_error(real_data, ErrorCode::kBadTarget));
}

TEST(Validate, UnsampledDataIsOnlyAWarning) {
  const auto r = validate_model(parse_model("data{real w;} params{real x;} model{x ~ normal(0,1);} goal{z = x;}"));
  EXPECT_TRUE(r.accepted);
  EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(PrettyPrint, CoinRoundTrip) {
  const auto m = parse_model(kCoin);
  const auto text = pretty_print(m);
  EXPECT_EQ(parse_model(text), m);
  EXPECT_EQ(pretty_print(parse_model(text)), text);
}

TEST(PrettyPrint, ArrayDeclarationsInOrder) {
  const auto m = parse_model("data{int J;} params{real b; real a[J]; real<lower=0> c[3];} "
                             "model{b ~ normal(0,1); a ~ normal(b,1); c ~ exponential(1);} goal{z = a[1] + c[2];}");
  const auto text = pretty_print(m);
  const auto pb = text.find("real b;");
  const auto pa = text.find("real a[J];");
  const auto pc = text.find("real<lower=0> c[3];");
  ASSERT_NE(pb, std::string::npos);
  ASSERT_NE(pa, std::string::npos);
  ASSERT_NE(pc, std::string::npos);
  EXPECT_LT(pb, pa);
  EXPECT_LT(pa, pc);
  EXPECT_EQ(parse_model(text), m);
}

TEST(PrettyPrint, ValidGateFixturesRoundTrip) {
  int valid = 0;
  for (const auto& path : gate_files()) {
    const auto blocks = extract_blocks(test::read_file(path));
    if (!blocks.model) continue;
    ParsedModel m;
    try {
      m = parse_model(*blocks.model);
    } catch (const Error&) {
      continue;
    }
    if (!validate_model(m).accepted) continue;
    ++valid;
    EXPECT_EQ(parse_model(pretty_print(m)), m) << path.filename();
  }
  EXPECT_EQ(valid, 20);
}

TEST(PrettyPrint, NumbersReadBackExactly) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  for (int i = 0; i < 1000; ++i) {
    const double v = std::abs(std::exp(u(rng)) * u(rng));
    const auto text = format_number(v, false);
    EXPECT_EQ(std::stod(text), v) << text;
    EXPECT_NE(text.find_first_of(".e"), std::string::npos) << text;
  }
  EXPECT_EQ(format_number(3, true), "3");
}

// Random expressions over a fixed declaration set.
class ExprGen {
 public:
  explicit ExprGen(std::uint64_t seed) : rng_(seed) {}

  ExprPtr gen(int depth) {
    const int kind = pick(depth <= 0 ? 4 : 7);
    switch (kind) {
      case 0: return make_literal(static_cast<double>(pick(20)), true);
      case 1: return make_literal(std::ldexp(static_cast<double>(pick(1000)), -pick(6)) + 0.5, false);
      case 2: return make_name(scalars_[pick(static_cast<int>(std::size(scalars_)))]);
      case 3: return make_index("x", make_literal(static_cast<double>(1 + pick(3)), true));
      case 4: return make_negate(gen(depth - 1));
      default: {
        const auto op = static_cast<BinaryOp>(pick(4));
        return make_binary(op, gen(depth - 1), gen(depth - 1));
      }
    }
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::mt19937_64 rng_;
  const char* scalars_[4] = {"a", "b", "N", "w"};
};

TEST(PrettyPrint, RandomModelsRoundTrip) {
  const auto base = parse_model(
      "data{int N; real w; real x[N];} params{real a; real<lower=0> b; real c[3];} "
      "model{a ~ normal(0,1); b ~ exponential(1); c ~ normal(a,b); x ~ normal(a,b);} goal{z = a;}");
  ExprGen gen(2024);
  for (int trial = 0; trial < 300; ++trial) {
    auto m = base;
    m.statements[0].args = {gen.gen(3), gen.gen(3)};
    m.statements[2].args = {gen.gen(4), gen.gen(2)};
    m.goals = {GoalDecl{"z", gen.gen(5), {}}, GoalDecl{"u", gen.gen(4), {}}};
    const auto text = pretty_print(m);
    ParsedModel back;
    ASSERT_NO_THROW(back = parse_model(text)) << text;
    EXPECT_EQ(back, m) << text;
  }
}

}  // namespace
}  // namespace lbayes::dsl
