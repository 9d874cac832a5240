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

#ifndef QUOTEATTR_ERROR_H_
#define QUOTEATTR_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace quoteattr {

// Error classes raised by the library. The CLI maps each class onto an exit
// code, so new kinds must also be added to ExitCodeFor().
enum class ErrorKind {
  kParse,        // malformed input record or model response
  kIntegrity,    // span text does not match the novel slice
  kReference,    // dangling id
  kConfig,       // bad ratios, templates, flags
  kInput,        // caller-supplied data violates a precondition
  kBounds,       // range outside a document
  kTemplate,     // placeholder mismatch
  kNoCandidate,  // rule baseline without candidates
  kTransport,    // network failure after retries
  kApi,          // non-success status from a remote model
  kLoad,         // missing model artifact
  kIo,           // unreadable/unwritable path
};

std::string_view ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse failure that keeps the offending text (e.g. a raw model response).
class ParseError : public Error {
 public:
  ParseError(const std::string &message, std::string raw)
      : Error(ErrorKind::kParse, message), raw_(std::move(raw)) {}

  const std::string &raw() const { return raw_; }

 private:
  std::string raw_;
};

// Remote API answered with a non-success status.
class ApiError : public Error {
 public:
  ApiError(int status, std::string payload)
      : Error(ErrorKind::kApi, "api error: status " + std::to_string(status) +
                                   ": " + payload),
        status_(status),
        payload_(std::move(payload)) {}

  int status() const { return status_; }
  const std::string &payload() const { return payload_; }

 private:
  int status_;
  std::string payload_;
};

// Wraps a backend failure with the id of the segment being identified.
class IdentifyError : public Error {
 public:
  IdentifyError(std::string segment_id, const Error &cause)
      : Error(cause.kind(), "segment " + segment_id + ": " + cause.what()),
        segment_id_(std::move(segment_id)) {}

  const std::string &segment_id() const { return segment_id_; }

 private:
  std::string segment_id_;
};

}  // namespace quoteattr

#endif  // QUOTEATTR_ERROR_H_
