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

// Generated by tests/oracles/compute_constants.py; do not edit.
#ifndef LBAYES_TESTS_ORACLES_CONSTANTS_HPP
#define LBAYES_TESTS_ORACLES_CONSTANTS_HPP

namespace lbayes::oracle {

inline constexpr double kCoinLogEvidenceBeta11 = -13.609666503728125531;
inline constexpr double kCoinLogEvidenceFactorial = -13.609666503728125531;
inline constexpr double kCoinLogEvidenceBeta22 = -13.390483353630012703;
inline constexpr double kCoinLogEvidenceBeta3030 = -13.602089604780623608;
inline constexpr double kCoinLogEvidenceBeta55 = -13.311461366673861767;
inline constexpr double kCoinBinomialLogEvidenceBeta11 = -3.0445224377234229965;
inline constexpr double kCoinExactWeight11 = 0.307440210048089541;
inline constexpr double kCoinExactWeight22 = 0.38278128919030911231;
inline constexpr double kCoinExactWeight3030 = 0.30977850076160134669;
inline constexpr double kCoinMixtureMean = 0.63518402657854180563;
inline constexpr double kCoinPosteriorMeanBeta22 = 0.66666666666666666667;
inline constexpr double kCoinLogJointAtZero = -14.843772864210632425;
inline constexpr double kNormalLogPdfAtZero = -0.91893853320467274178;
inline constexpr double kHalfNormalLogPdfAt03 = -0.27079135264472743236;
inline constexpr double kNormalNormalSingleZero = -1.2655121234846453965;
inline constexpr double kNormalNormalPosteriorMean = 1.350364963503649635;
inline constexpr double kNormalNormalPosteriorVar = 0.26277372262773722628;
inline constexpr double kNormalNormalLogEvidence = -13.056363995746216666;
inline constexpr double kGaussianElboVar2 = -0.15342640972002734529;
inline constexpr double kRainIidLogEvidence = -15.810851482280441842;
inline constexpr double kRainMarkovLogEvidence = -15.447945988591073389;
inline constexpr double kRainMarkovWeight = 0.58974358974358974359;
inline constexpr double kDemoMu = 0.64700882956012023123;
inline constexpr double kDemoVn = 0.0015666180323138761474;
inline constexpr double kDemoChi2 = 0.23428117332870590082;
inline constexpr double kDemoDelta = 0.097008829560120186817;
inline constexpr double kDemoBound = 0.01161546589908182458;
inline constexpr double kUniformSnisPopulationVar = 0.08421875;

}  // namespace lbayes::oracle

#endif
