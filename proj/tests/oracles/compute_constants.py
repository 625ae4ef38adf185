#!/usr/bin/env python3
"""Computes reference constants with mpmath at 50 digits and writes constants.hpp."""

import json
import pathlib

import mpmath as mp

mp.mp.dps = 50

ROOT = pathlib.Path(__file__).resolve().parents[2]
HEADER = [
    '// Copyright 2026 The lbayes Authors',
    '//',
    '// Licensed under the Apache License, Version 2.0 (the "License");',
    '// you may not use this file except in compliance with the License.',
    '// You may obtain a copy of the License at',
    '//',
    '//     http://www.apache.org/licenses/LICENSE-2.0',
    '//',
    '// Unless required by applicable law or agreed to in writing, software',
    '// distributed under the License is distributed on an "AS IS" BASIS,',
    '// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.',
    '// See the License for the specific language governing permissions and',
    '// limitations under the License.',
    "",
]


def log_beta_fn(a, b):
    return mp.log(mp.beta(a, b))


def beta_bernoulli(a, b, heads, tails):
    return log_beta_fn(a + heads, b + tails) - log_beta_fn(a, b)


def softmax(xs):
    m = max(xs)
    e = [mp.e ** (x - m) for x in xs]
    s = sum(e)
    return [v / s for v in e]


def normal_logpdf(x, mu, sd):
    return -mp.log(2 * mp.pi) / 2 - mp.log(sd) - (x - mu) ** 2 / (2 * sd**2)


def theory_constants(space):
    prior = [mp.mpf(p) for p in space["prior"]]
    logev = [mp.mpf(v) for v in space["log_evidence"]]
    g = [mp.mpf(v) for v in space["g"]]
    post = softmax([mp.log(p) + l for p, l in zip(prior, logev)])
    mu = sum(p * gi for p, gi in zip(post, g))
    v_n = sum(pr * (po / pr) ** 2 * (gi - mu) ** 2 for pr, po, gi in zip(prior, post, g))
    chi2 = sum(po**2 / pr for pr, po in zip(prior, post)) - 1
    delta = max(abs(gi - mu) for gi in g)
    return mu, v_n, chi2, delta, delta**2 * (1 + chi2)


def main():
    out = {}
    heads, tails = 14, 6
    out["kCoinLogEvidenceBeta11"] = beta_bernoulli(1, 1, heads, tails)
    out["kCoinLogEvidenceFactorial"] = mp.log(mp.factorial(14) * mp.factorial(6) / mp.factorial(21))
    out["kCoinLogEvidenceBeta22"] = beta_bernoulli(2, 2, heads, tails)
    out["kCoinLogEvidenceBeta3030"] = beta_bernoulli(30, 30, heads, tails)
    out["kCoinLogEvidenceBeta55"] = beta_bernoulli(5, 5, heads, tails)
    out["kCoinBinomialLogEvidenceBeta11"] = out["kCoinLogEvidenceBeta11"] + mp.log(mp.binomial(20, 14))

    w = softmax([out["kCoinLogEvidenceBeta11"], out["kCoinLogEvidenceBeta22"], out["kCoinLogEvidenceBeta3030"]])
    for name, v in zip(["11", "22", "3030"], w):
        out["kCoinExactWeight" + name] = v
    means = [mp.mpf(15) / 22, mp.mpf(16) / 24, mp.mpf(44) / 80]
    out["kCoinMixtureMean"] = sum(wi * mi for wi, mi in zip(w, means))
    out["kCoinPosteriorMeanBeta22"] = mp.mpf(16) / 24

    # Coin log joint at y = 0 (theta = 1/2) under a beta(2, 2) prior.
    out["kCoinLogJointAtZero"] = mp.log(mp.mpf(3) / 2) + 20 * mp.log(mp.mpf(1) / 2) + mp.log(mp.mpf(1) / 4)

    out["kNormalLogPdfAtZero"] = normal_logpdf(0, 0, 1)
    out["kHalfNormalLogPdfAt03"] = normal_logpdf(mp.mpf("0.3"), 0, 1) + mp.log(2)
    out["kNormalNormalSingleZero"] = normal_logpdf(0, 0, mp.sqrt(2))

    # Normal-normal posterior: prior N(1, 2), noise sd 1.5, fixed observations.
    xs = [mp.mpf(v) for v in ["0.3", "1.7", "2.2", "0.9", "1.4", "2.8", "1.1", "0.6"]]
    m0, s0, sn = mp.mpf(1), mp.mpf(2), mp.mpf("1.5")
    prec = 1 / s0**2 + len(xs) / sn**2
    out["kNormalNormalPosteriorMean"] = (m0 / s0**2 + sum(xs) / sn**2) / prec
    out["kNormalNormalPosteriorVar"] = 1 / prec
    cov = [[s0**2 + (sn**2 if i == j else 0) for j in range(len(xs))] for i in range(len(xs))]
    cov = mp.matrix(cov)
    r = mp.matrix([x - m0 for x in xs])
    quad = (r.T * mp.inverse(cov) * r)[0]
    out["kNormalNormalLogEvidence"] = -len(xs) / 2 * mp.log(2 * mp.pi) - mp.log(mp.det(cov)) / 2 - quad / 2

    # ELBO of q = N(0, variance 2) against p = N(0, 1): -KL(q || p).
    out["kGaussianElboVar2"] = -(mp.mpf(2) - 1 - mp.log(2)) / 2

    # Rain: iid Bernoulli with beta(1, 1) and one-parameter persistence chain
    # with beta(1, 1) and a fair first day.
    rain = [0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1]
    ones = sum(rain)
    stays = sum(1 for a, b in zip(rain, rain[1:]) if a == b)
    out["kRainIidLogEvidence"] = beta_bernoulli(1, 1, ones, len(rain) - ones)
    out["kRainMarkovLogEvidence"] = mp.log(mp.mpf(1) / 2) + beta_bernoulli(1, 1, stays, len(rain) - 1 - stays)
    out["kRainMarkovWeight"] = softmax([out["kRainIidLogEvidence"], out["kRainMarkovLogEvidence"]])[1]

    space = json.loads((ROOT / "data/theory/demo_space.json").read_text())
    mu, v_n, chi2, delta, bound = theory_constants(space)
    out["kDemoMu"] = mu
    out["kDemoVn"] = v_n
    out["kDemoChi2"] = chi2
    out["kDemoDelta"] = delta
    out["kDemoBound"] = bound

    # Uniform prior, equal evidences: the estimator is a sample mean of g.
    g = [mp.mpf(v) for v in ["0.1", "0.4", "0.35", "0.9"]]
    gbar = sum(g) / len(g)
    out["kUniformSnisPopulationVar"] = sum((x - gbar) ** 2 for x in g) / len(g)

    lines = HEADER + [
        "// Generated by tests/oracles/compute_constants.py; do not edit.",
        "#ifndef LBAYES_TESTS_ORACLES_CONSTANTS_HPP",
        "#define LBAYES_TESTS_ORACLES_CONSTANTS_HPP",
        "",
        "namespace lbayes::oracle {",
        "",
    ]
    for name, value in out.items():
        lines.append(f"inline constexpr double {name} = {mp.nstr(value, 20, min_fixed=-30, max_fixed=30)};")
    lines += ["", "}  // namespace lbayes::oracle", "", "#endif", ""]
    (ROOT / "tests/oracles/constants.hpp").write_text("\n".join(lines))


if __name__ == "__main__":
    main()
