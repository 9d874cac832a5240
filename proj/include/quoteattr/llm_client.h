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

// Chat-completion client and the on-disk response cache.
//
// Request body:  {"model": ..., "messages": [{"role": "user", "content":
//                 <prompt>}], "temperature": ...}
// Response body: choices[0].message.content is returned verbatim.
// The API key is read from the environment variable named in the config
// and sent as a Bearer token.

#ifndef QUOTEATTR_LLM_CLIENT_H_
#define QUOTEATTR_LLM_CLIENT_H_

#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace quoteattr {

struct LlmClientConfig {
  std::string endpoint;  // e.g. http://127.0.0.1:8080/v1/chat/completions
  std::string model_name;
  double temperature = 0.0;
  int max_retries = 3;
  std::chrono::milliseconds timeout{60000};
  int parallelism = 4;
  std::string api_key_env = "OPENAI_API_KEY";
  std::chrono::milliseconds initial_backoff{500};
  double backoff_multiplier = 2.0;

  // Throws kConfig.
  void Validate() const;
  // Delay slept before retry number `retry` (1-based).
  std::chrono::milliseconds BackoffBefore(int retry) const;

  // JSON object with the fields above; durations in milliseconds
  // ("timeout_ms", "initial_backoff_ms").
  static LlmClientConfig FromFile(const std::filesystem::path &path);
};

struct Completion {
  std::string text;
  std::exception_ptr error;  // set when the request failed

  bool ok() const { return !error; }
};

class LlmClient {
 public:
  using SleepFn = std::function<void(std::chrono::milliseconds)>;

  // Throws kConfig for an invalid config or a missing API key.
  explicit LlmClient(LlmClientConfig config, SleepFn sleep = nullptr);

  const LlmClientConfig &config() const { return config_; }

  // Retries connection failures, 429 and 5xx with exponential backoff.
  // Throws ApiError for other non-success statuses, kTransport once the
  // retries are exhausted and kParse for an unreadable body.
  std::string Complete(const std::string &prompt) const;

  // Runs Complete over `prompts` with at most `parallelism` requests in
  // flight. Results are in input order.
  std::vector<Completion> CompleteAll(
      const std::vector<std::string> &prompts) const;

  // HTTP requests issued so far, retries included.
  std::size_t requests_sent() const { return requests_sent_.load(); }

 private:
  LlmClientConfig config_;
  SleepFn sleep_;
  std::string api_key_;
  std::string base_url_;
  std::string path_;
  mutable std::atomic<std::size_t> requests_sent_{0};
};

// Lowercase hex SHA-256 of `data`.
std::string Sha256Hex(const std::string &data);

// Raw responses keyed by (prompt hash, model). With a path, existing
// entries are loaded on construction and every Put is appended to the file.
// Thread-safe.
class ResponseCache {
 public:
  ResponseCache() = default;
  explicit ResponseCache(std::filesystem::path path);

  std::optional<std::string> Get(const std::string &model,
                                 const std::string &prompt) const;
  void Put(const std::string &model, const std::string &prompt,
           const std::string &response);
  std::size_t size() const;

 private:
  std::optional<std::filesystem::path> path_;
  mutable std::mutex mutex_;
  std::map<std::pair<std::string, std::string>, std::string> entries_;
};

}  // namespace quoteattr

#endif  // QUOTEATTR_LLM_CLIENT_H_
