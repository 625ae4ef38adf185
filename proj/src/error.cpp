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

#include "lbayes/error.hpp"

#include <algorithm>

namespace lbayes {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax: return "E_SYNTAX";
    case ErrorCode::kUnknownDist: return "E_UNKNOWN_DIST";
    case ErrorCode::kUndeclaredName: return "E_UNDECLARED_NAME";
    case ErrorCode::kDoubleSample: return "E_DOUBLE_SAMPLE";
    case ErrorCode::kNoPrior: return "E_NO_PRIOR";
    case ErrorCode::kNoGoal: return "E_NO_GOAL";
    case ErrorCode::kBadArg: return "E_BAD_ARG";
    case ErrorCode::kBadTarget: return "E_BAD_TARGET";
    case ErrorCode::kShapeMismatch: return "E_SHAPE_MISMATCH";
    case ErrorCode::kMissingData: return "E_MISSING_DATA";
    case ErrorCode::kExtraData: return "E_EXTRA_DATA";
    case ErrorCode::kDataDomain: return "E_DATA_DOMAIN";
    case ErrorCode::kBadIndex: return "E_BAD_INDEX";
    case ErrorCode::kOutOfDomain: return "E_OUT_OF_DOMAIN";
    case ErrorCode::kUnsupportedTruncation: return "E_UNSUPPORTED_TRUNCATION";
    case ErrorCode::kInitInvalid: return "E_INIT_INVALID";
    case ErrorCode::kCannotInitialize: return "E_CANNOT_INITIALIZE";
    case ErrorCode::kDegenerate: return "E_DEGENERATE";
    case ErrorCode::kAllInvalid: return "E_ALL_INVALID";
    case ErrorCode::kUnsupportedFamily: return "E_UNSUPPORTED_FAMILY";
    case ErrorCode::kAllNegInf: return "E_ALL_NEG_INF";
    case ErrorCode::kGoalShapeMismatch: return "E_GOAL_SHAPE_MISMATCH";
    case ErrorCode::kMissingResource: return "E_MISSING_RESOURCE";
    case ErrorCode::kEmptyCorpus: return "E_EMPTY_CORPUS";
    case ErrorCode::kHttp: return "E_HTTP";
    case ErrorCode::kTimeout: return "E_TIMEOUT";
    case ErrorCode::kBadResponse: return "E_BAD_RESPONSE";
    case ErrorCode::kMissingApiKey: return "E_MISSING_API_KEY";
    case ErrorCode::kZeroPriorSupport: return "E_ZERO_PRIOR_SUPPORT";
    case ErrorCode::kParseSpace: return "E_PARSE_SPACE";
    case ErrorCode::kParseProblem: return "E_PARSE_PROBLEM";
    case ErrorCode::kNoAcceptedModels: return "E_NO_ACCEPTED_MODELS";
    case ErrorCode::kIo: return "E_IO";
    case ErrorCode::kInvalidConfig: return "E_INVALID_CONFIG";
  }
  return "E_UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

std::string_view Error::detail() const noexcept {
  const std::string_view full = what();
  return full.substr(std::min(full.size(), to_string(code_).size() + 2));
}

}  // namespace lbayes
