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

// Command-line driver. Subcommands: import, validate, stats, split, predict,
// eval, iaa, network, report, export. Each writes its artifacts under --out.

#ifndef QUOTEATTR_CLI_H_
#define QUOTEATTR_CLI_H_

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "quoteattr/corpus.h"
#include "quoteattr/error.h"

namespace quoteattr {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitTransport = 4;
inline constexpr int kExitPartial = 5;  // some segments failed to predict

int ExitCodeFor(ErrorKind kind);

// "8:1:1" or "0.8:0.1:0.1"; parts are normalized by their sum. Throws
// kConfig.
SplitRatios ParseRatios(std::string_view text);

// `args` excludes the program name. Returns the process exit code.
int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err);

}  // namespace quoteattr

#endif  // QUOTEATTR_CLI_H_
