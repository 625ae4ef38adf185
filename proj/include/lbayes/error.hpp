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

#ifndef LBAYES_ERROR_HPP
#define LBAYES_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace lbayes {

/// Error codes shared by every module. The string form ("E_SYNTAX", ...) is
/// what appears in reports and CLI output.
enum class ErrorCode {
  kSyntax,
  kUnknownDist,
  kUndeclaredName,
  kDoubleSample,
  kNoPrior,
  kNoGoal,
  kBadArg,
  kBadTarget,
  kShapeMismatch,
  kMissingData,
  kExtraData,
  kDataDomain,
  kBadIndex,
  kOutOfDomain,
  kUnsupportedTruncation,
  kInitInvalid,
  kCannotInitialize,
  kDegenerate,
  kAllInvalid,
  kUnsupportedFamily,
  kAllNegInf,
  kGoalShapeMismatch,
  kMissingResource,
  kEmptyCorpus,
  kHttp,
  kTimeout,
  kBadResponse,
  kMissingApiKey,
  kZeroPriorSupport,
  kParseSpace,
  kParseProblem,
  kNoAcceptedModels,
  kIo,
  kInvalidConfig,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  /// The message without the leading "E_XXX: ".
  [[nodiscard]] std::string_view detail() const noexcept;

 private:
  ErrorCode code_;
};

}  // namespace lbayes

#endif
