// Copyright 2026 The quoteattr Authors.
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

// JSON Lines helpers shared by the file formats.

#ifndef QUOTEATTR_JSONL_H_
#define QUOTEATTR_JSONL_H_

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace quoteattr {

using Json = nlohmann::ordered_json;

// Calls `visit(object, line_number)` for every non-blank line. Malformed JSON
// and exceptions thrown by `visit` that are not quoteattr::Error become kParse
// errors naming the file and line. Missing files raise kIo.
void ReadJsonLines(const std::filesystem::path &path,
                   const std::function<void(const Json &, std::size_t)> &visit);

// Writes one compact object per line, creating parent directories.
void WriteJsonLines(const std::filesystem::path &path,
                    const std::vector<Json> &rows);

// Whole-file helpers.
std::string ReadFile(const std::filesystem::path &path);
void WriteFile(const std::filesystem::path &path, const std::string &content);

}  // namespace quoteattr

#endif  // QUOTEATTR_JSONL_H_
