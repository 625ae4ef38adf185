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

#ifndef LBAYES_PROPOSER_SOURCE_HPP
#define LBAYES_PROPOSER_SOURCE_HPP

#include <cstdio>
#include <string>

namespace lbayes {

/// One candidate model as emitted by a proposer, before block extraction.
struct ModelSource {
  std::string id;      // unique within a run
  std::string origin;  // corpus file name or request index
  std::string raw_text;
};

/// Id of the index-th (0-based) source of a run: "m0001", "m0002", ...
inline std::string source_id(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "m%04zu", index + 1);
  return buf;
}

}  // namespace lbayes

#endif
