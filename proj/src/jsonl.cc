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

#include "quoteattr/jsonl.h"

#include <fstream>
#include <sstream>

#include "quoteattr/error.h"

namespace quoteattr {

namespace fs = std::filesystem;

std::string ReadFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const fs::path &path, const std::string &content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << content;
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

void ReadJsonLines(const fs::path &path,
                   const std::function<void(const Json &, std::size_t)> &visit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::string where = path.filename().string() + ":" +
                              std::to_string(line_no);
    Json row;
    try {
      row = Json::parse(line);
    } catch (const Json::exception &e) {
      throw ParseError(where + ": " + e.what(), line);
    }
    try {
      visit(row, line_no);
    } catch (const Error &e) {
      if (e.kind() == ErrorKind::kParse) {
        throw ParseError(where + ": " + e.what(), line);
      }
      throw;
    } catch (const Json::exception &e) {
      std::string id;
      if (row.is_object()) {
        for (const char *key : {"id", "quote_id", "segment_id", "novel_id"}) {
          if (row.contains(key) && row[key].is_string()) {
            id = row[key].get<std::string>();
            break;
          }
        }
      }
      throw ParseError(where + (id.empty() ? "" : " (record " + id + ")") +
                           ": " + e.what(),
                       line);
    }
  }
}

void WriteJsonLines(const fs::path &path, const std::vector<Json> &rows) {
  std::string content;
  for (const Json &row : rows) {
    content += row.dump();
    content += '\n';
  }
  WriteFile(path, content);
}

}  // namespace quoteattr
