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

#include <cmath>
#include <limits>
#include <random>

#include "lbayes/density/dataset.hpp"
#include "lbayes/density/distributions.hpp"
#include "lbayes/dsl/parser.hpp"
#include "lbayes/evidence/bounds.hpp"
#include "lbayes/evidence/conjugate.hpp"
#include "lbayes/evidence/proposal.hpp"
#include "lbayes/mcmc/sampler.hpp"
#include "oracles/constants.hpp"

namespace lbayes {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr const char* kCoinData = R"({"N": 20, "y": [1,0,1,1,1,0,1,1,0,1,1,1,0,1,1,0,1,1,0,1]})";

LogDensityFn make_fn(std::string_view model, std::string_view data = "{}") {
  return LogDensityFn(dsl::parse_model(model), parse_dataset(data));
}

LogDensityFn coin_fn(const std::string& a, const std::string& b) {
  return make_fn("data{int N; int y[N] in {0,1};} params{real<lower=0,upper=1> theta;} model{theta ~ beta(" + a + ", " +
                     b + "); y ~ bernoulli(theta);} goal{z = theta;}",
                 kCoinData);
}

ErrorCode error_code(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

GaussianProposal gaussian_1d(double mean, double var) {
  return GaussianProposal(Eigen::VectorXd::Constant(1, mean), Eigen::MatrixXd::Constant(1, 1, var));
}

/// MCMC, moment matching and the bound, as the pipeline runs them.
EvidenceEstimate estimate(const LogDensityFn& f, std::uint64_t seed, int K = 25, int R = 10000) {
  const auto s = sample_posterior(f, McmcConfig{.seed = seed});
  return iw_elbo(f, moment_match(s), EvidenceConfig{.K = K, .R = R, .seed = seed + 1});
}

TEST(MomentMatch, TwoPointDraws) {
  const auto q = moment_match(std::vector{-1.0, 1.0}, 1);
  EXPECT_DOUBLE_EQ(q.mean()(0), 0.0);
  EXPECT_DOUBLE_EQ(q.covariance()(0, 0), 2.0);
  EXPECT_EQ(q.jitter(), 0.0);
}

TEST(MomentMatch, IdenticalDrawsUseJitter) {
  const std::vector<double> draws(3 * 50, 0.7);
  const auto q = moment_match(draws, 3);
  EXPECT_GT(q.jitter(), 0.0);
  EXPECT_LE(q.jitter(), 1e-2);
  for (int i = 0; i < 3; ++i) {
    EXPECT_DOUBLE_EQ(q.mean()(i), 0.7);
    EXPECT_NEAR(q.covariance()(i, i), q.jitter(), 1e-15);
  }
}

TEST(MomentMatch, StatisticalRecovery) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(3.0, 2.0);
  std::vector<double> draws(100000);
  for (auto& x : draws) x = n(rng);
  const auto q = moment_match(draws, 1);
  EXPECT_NEAR(q.mean()(0), 3.0, 0.05);
  EXPECT_NEAR(q.covariance()(0, 0), 4.0, 0.15);
}

TEST(MomentMatch, CorrelatedDraws) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> draws;
  for (int i = 0; i < 50000; ++i) {
    const double a = n(rng);
    const double b = 0.8 * a + 0.6 * n(rng);
    draws.push_back(a);
    draws.push_back(b);
  }
  const auto q = moment_match(draws, 2);
  EXPECT_NEAR(q.covariance()(0, 1), 0.8, 0.02);
  EXPECT_EQ(q.covariance()(0, 1), q.covariance()(1, 0));
  EXPECT_NEAR((q.chol() * q.chol().transpose() - q.covariance()).norm(), 0.0, 1e-12);
}

TEST(MomentMatch, TooFewDraws) {
  EXPECT_EQ(error_code([] { moment_match(std::vector{1.0, 2.0}, 2); }), ErrorCode::kDegenerate);
}

TEST(GaussianProposal, DensityMatchesSamplerReturn) {
  Eigen::MatrixXd cov(2, 2);
  cov << 2.0, 0.3, 0.3, 0.5;
  const GaussianProposal q(Eigen::Vector2d(1.0, -1.0), cov);
  Rng rng(3);
  std::vector<double> y(2);
  for (int i = 0; i < 100; ++i) {
    const double lq = q.sample(rng, y);
    EXPECT_NEAR(lq, q.log_density(y), 1e-12);
  }
  EXPECT_EQ(error_code([] { GaussianProposal(Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Constant(1, 1, -1.0)); }),
            ErrorCode::kDegenerate);
}

TEST(IwElbo, TightWhenTargetIsProportionalToProposal) {
  const auto f = make_fn("data{real x0;} params{real x;} model{x ~ normal(0.5, 1.3); x0 ~ normal(2, 1);} goal{z = x;}",
                         R"({"x0": 0.25})");
  const double c = -0.5 * std::log(2 * M_PI) - 0.5 * 1.75 * 1.75;
  const auto q = gaussian_1d(0.5, 1.69);
  const auto est = iw_elbo(f, q, EvidenceConfig{.K = 25, .R = 2000, .seed = 4});
  EXPECT_NEAR(est.value, c, 1e-12);
  EXPECT_LT(est.std_error, 1e-12);
  const auto plain = elbo(f, q, 2000, 4);
  EXPECT_NEAR(plain.value, c, 1e-12);
  EXPECT_LT(plain.std_error, 1e-12);
}

TEST(IwElbo, KOneIsThePlainElbo) {
  const auto f = coin_fn("2", "2");
  const auto q = gaussian_1d(0.7, 0.3);
  const auto a = iw_elbo(f, q, EvidenceConfig{.K = 1, .R = 5000, .seed = 77});
  const auto b = elbo(f, q, 5000, 77);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_EQ(b.K, 1);
  EXPECT_EQ(b.R, 5000);
  const auto terms = iw_elbo_terms(f, q, EvidenceConfig{.K = 1, .R = 5000, .seed = 77});
  double manual = 0.0;
  for (double t : terms) manual += t;
  EXPECT_NEAR(a.value, manual / 5000.0, 1e-12);
}

TEST(IwElbo, CoinMatchesConjugateEvidence) {
  const auto est = estimate(coin_fn("1", "1"), 31);
  EXPECT_NEAR(est.value, oracle::kCoinLogEvidenceBeta11, 0.05);
  EXPECT_EQ(est.K, 25);
  EXPECT_EQ(est.R, 10000);
  EXPECT_GT(est.std_error, 0.0);
}

TEST(Elbo, GaussianKlClosedForm) {
  const auto f = make_fn("params{real x;} model{x ~ normal(0, 1);} goal{z = x;}");
  const auto est = elbo(f, gaussian_1d(0.0, 2.0), 200000, 6);
  EXPECT_LT(std::abs(est.value - oracle::kGaussianElboVar2), 3 * est.std_error);
}

struct ConjugateCase {
  std::string name;
  LogDensityFn f;
  double exact;
};

std::vector<ConjugateCase> conjugate_cases() {
  std::vector<ConjugateCase> out;
  out.push_back({"coin_1_1", coin_fn("1", "1"), oracle::kCoinLogEvidenceBeta11});
  out.push_back({"coin_2_2", coin_fn("2", "2"), oracle::kCoinLogEvidenceBeta22});
  out.push_back({"coin_30_30", coin_fn("30", "30"), oracle::kCoinLogEvidenceBeta3030});
  out.push_back({"coin_5_5", coin_fn("5", "5"), oracle::kCoinLogEvidenceBeta55});
  out.push_back({"binomial",
                 make_fn("data{int n; int k;} params{real<lower=0,upper=1> p;} model{p ~ beta(1, 1); k ~ binomial(n, p);} "
                         "goal{z = p;}",
                         R"({"n": 20, "k": 14})"),
                 oracle::kCoinBinomialLogEvidenceBeta11});
  out.push_back({"normal_normal",
                 make_fn("data{int N; real x[N];} params{real mu;} model{mu ~ normal(1, 2); x ~ normal(mu, 1.5);} "
                         "goal{z = mu;}",
                         R"({"N": 8, "x": [0.3, 1.7, 2.2, 0.9, 1.4, 2.8, 1.1, 0.6]})"),
                 oracle::kNormalNormalLogEvidence});
  return out;
}

TEST(IwElbo, LowerBoundOnConjugateFixtures) {
  for (const auto& c : conjugate_cases()) {
    const auto s = sample_posterior(c.f, McmcConfig{.seed = 40});
    const auto q = moment_match(s);
    const auto iw = iw_elbo(c.f, q, EvidenceConfig{.K = 25, .R = 10000, .seed = 41});
    EXPECT_LE(iw.value, c.exact + 3 * iw.std_error) << c.name;
    EXPECT_NEAR(iw.value, c.exact, 0.05) << c.name;
    const auto plain = elbo(c.f, q, 10000, 42);
    const double joint_se = std::hypot(plain.std_error, iw.std_error);
    EXPECT_LE(plain.value, iw.value + 3 * joint_se) << c.name;
  }
}

TEST(IwElbo, TighterWithMoreSamples) {
  const auto f = coin_fn("30", "30");
  const auto q = gaussian_1d(0.3, 0.5);
  double k1 = 0.0;
  double k25 = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    k1 += iw_elbo(f, q, EvidenceConfig{.K = 1, .R = 1000, .seed = seed}).value;
    k25 += iw_elbo(f, q, EvidenceConfig{.K = 25, .R = 1000, .seed = seed}).value;
  }
  EXPECT_GE(k25 / 20, k1 / 20);
  EXPECT_LE(k25 / 20, oracle::kCoinLogEvidenceBeta3030 + 0.01);
}

TEST(IwElbo, LogSpaceStability) {
  const auto low = make_fn("data{real d;} params{real x;} model{x ~ normal(0, 1); d ~ normal(0, 0.01);} goal{z = x;}",
                           R"({"d": 0.3728})");
  const auto high = make_fn("data{real d;} params{real x;} model{x ~ normal(0, 1); d ~ normal(0, 1e-304);} goal{z = x;}",
                            R"({"d": 0})");
  const auto q = gaussian_1d(0.1, 1.2);
  for (const auto* f : {&low, &high}) {
    const double c = log_density_dist(dsl::Dist::kNormal, std::vector{0.0, f == &low ? 0.01 : 1e-304},
                                      f == &low ? 0.3728 : 0.0);
    ASSERT_GT(std::abs(c), 690.0);
    const auto est = iw_elbo(*f, q, EvidenceConfig{.K = 25, .R = 500, .seed = 1});
    EXPECT_TRUE(std::isfinite(est.value));
    EXPECT_TRUE(std::isfinite(est.std_error));
    EXPECT_NEAR(est.value, c, 0.05);
  }
}

TEST(IwElbo, AllInvalidDrawsGiveNegativeInfinity) {
  const auto f = make_fn("params{real x;} model{x ~ uniform(10, 11);} goal{z = x;}");
  const auto est = iw_elbo(f, gaussian_1d(0.0, 1.0), EvidenceConfig{.K = 5, .R = 100, .seed = 1});
  EXPECT_EQ(est.value, -kInf);
  EXPECT_EQ(est.std_error, kInf);
}

TEST(IwElbo, PartiallyInvalidDrawsDropOut) {
  const auto f = make_fn("params{real x;} model{x ~ uniform(-1, 1);} goal{z = x;}");
  const auto est = iw_elbo(f, gaussian_1d(0.0, 1.0), EvidenceConfig{.K = 25, .R = 2000, .seed = 1});
  EXPECT_TRUE(std::isfinite(est.value));
  EXPECT_LE(est.value, 3 * est.std_error);
  EXPECT_GT(est.value, -0.1);
}

TEST(IwElbo, SerialAndParallelAreBitIdentical) {
  const auto f = coin_fn("2", "2");
  const auto q = gaussian_1d(0.7, 0.3);
  EvidenceConfig cfg{.K = 25, .R = 3000, .seed = 5, .execution = Execution::kSerial};
  const auto a = iw_elbo(f, q, cfg);
  cfg.execution = Execution::kParallel;
  const auto b = iw_elbo(f, q, cfg);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(EvidenceConfig, Validation) {
  EXPECT_EQ(error_code([] { EvidenceConfig{.K = 0}.check(); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(error_code([] { EvidenceConfig{.R = 0}.check(); }), ErrorCode::kInvalidConfig);
  const auto f = make_fn("params{real x;} model{x ~ normal(0, 1);} goal{z = x;}");
  EXPECT_EQ(error_code([&] { elbo(f, gaussian_1d(0, 1), 1, 0); }), ErrorCode::kInvalidConfig);
}

TEST(Conjugate, ClosedForms) {
  const std::vector<double> flips{1, 0, 1, 1, 1, 0, 1, 1, 0, 1, 1, 1, 0, 1, 1, 0, 1, 1, 0, 1};
  EXPECT_NEAR(conjugate_evidence("beta_bernoulli", flips, std::vector{1.0, 1.0}), oracle::kCoinLogEvidenceFactorial,
              1e-12);
  EXPECT_NEAR(beta_bernoulli_log_evidence(30, 30, 14, 6), oracle::kCoinLogEvidenceBeta3030, 1e-12);
  const double binom = conjugate_evidence("beta_binomial", std::vector{14.0, 20.0}, std::vector{1.0, 1.0});
  EXPECT_NEAR(binom, oracle::kCoinBinomialLogEvidenceBeta11, 1e-12);
  EXPECT_NEAR(binom - oracle::kCoinLogEvidenceBeta11, std::log(38760.0), 1e-12);
  EXPECT_NEAR(conjugate_evidence("normal_normal_known_var", std::vector{0.0}, std::vector{0.0, 1.0, 1.0}),
              oracle::kNormalNormalSingleZero, 1e-14);
  EXPECT_NEAR(normal_normal_log_evidence(1.0, 2.0, 1.5, std::vector{0.3, 1.7, 2.2, 0.9, 1.4, 2.8, 1.1, 0.6}),
              oracle::kNormalNormalLogEvidence, 1e-12);
}

TEST(Conjugate, Errors) {
  EXPECT_EQ(error_code([] { conjugate_evidence("gamma_poisson", std::vector{1.0}, std::vector{1.0, 1.0}); }),
            ErrorCode::kUnsupportedFamily);
  EXPECT_EQ(error_code([] { conjugate_evidence("beta_bernoulli", std::vector{2.0}, std::vector{1.0, 1.0}); }),
            ErrorCode::kBadArg);
  EXPECT_EQ(error_code([] { conjugate_evidence("beta_binomial", std::vector{15.0, 10.0}, std::vector{1.0, 1.0}); }),
            ErrorCode::kBadArg);
  EXPECT_EQ(error_code([] { conjugate_evidence("beta_bernoulli", std::vector{1.0}, std::vector{1.0}); }),
            ErrorCode::kBadArg);
}

}  // namespace
}  // namespace lbayes
