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

#ifndef LBAYES_IO_HPP
#define LBAYES_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

namespace lbayes {

/// Whole-file read; throws Error(E_IO) naming the path on failure.
std::string read_text_file(const std::filesystem::path& path);

/// Creates parent directories as needed; throws Error(E_IO) on failure.
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace lbayes

#endif
