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

#include "quoteattr/error.h"

namespace quoteattr {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kIntegrity: return "integrity";
    case ErrorKind::kReference: return "reference";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kInput: return "input";
    case ErrorKind::kBounds: return "bounds";
    case ErrorKind::kTemplate: return "template";
    case ErrorKind::kNoCandidate: return "no-candidate";
    case ErrorKind::kTransport: return "transport";
    case ErrorKind::kApi: return "api";
    case ErrorKind::kLoad: return "load";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

}  // namespace quoteattr
