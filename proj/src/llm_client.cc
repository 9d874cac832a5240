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

#include "quoteattr/llm_client.h"

#include <openssl/evp.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "httplib.h"
#include "quoteattr/error.h"
#include "quoteattr/jsonl.h"

namespace quoteattr {

void LlmClientConfig::Validate() const {
  auto fail = [](const std::string &message) {
    throw Error(ErrorKind::kConfig, "llm config: " + message);
  };
  if (endpoint.find("://") == std::string::npos) {
    fail("endpoint must be an http(s) URL: '" + endpoint + "'");
  }
  if (model_name.empty()) fail("model_name is empty");
  if (!(temperature >= 0)) fail("temperature must be >= 0");
  if (max_retries < 0) fail("max_retries must be >= 0");
  if (parallelism < 1) fail("parallelism must be >= 1");
  if (timeout.count() <= 0) fail("timeout must be positive");
  if (initial_backoff.count() < 0) fail("initial_backoff must be >= 0");
  if (!(backoff_multiplier >= 1)) fail("backoff_multiplier must be >= 1");
  if (api_key_env.empty()) fail("api_key_env is empty");
}

std::chrono::milliseconds LlmClientConfig::BackoffBefore(int retry) const {
  const double ms = static_cast<double>(initial_backoff.count()) *
                    std::pow(backoff_multiplier, retry - 1);
  return std::chrono::milliseconds(static_cast<long long>(std::llround(ms)));
}

LlmClientConfig LlmClientConfig::FromFile(const std::filesystem::path &path) {
  LlmClientConfig config;
  try {
    const Json obj = Json::parse(ReadFile(path));
    config.endpoint = obj.value("endpoint", config.endpoint);
    config.model_name = obj.value("model_name", config.model_name);
    config.temperature = obj.value("temperature", config.temperature);
    config.max_retries = obj.value("max_retries", config.max_retries);
    config.timeout = std::chrono::milliseconds(
        obj.value("timeout_ms", static_cast<long long>(config.timeout.count())));
    config.parallelism = obj.value("parallelism", config.parallelism);
    config.api_key_env = obj.value("api_key_env", config.api_key_env);
    config.initial_backoff = std::chrono::milliseconds(obj.value(
        "initial_backoff_ms",
        static_cast<long long>(config.initial_backoff.count())));
    config.backoff_multiplier =
        obj.value("backoff_multiplier", config.backoff_multiplier);
  } catch (const Json::exception &e) {
    throw Error(ErrorKind::kConfig,
                "llm config " + path.string() + ": " + e.what());
  }
  config.Validate();
  return config;
}

LlmClient::LlmClient(LlmClientConfig config, SleepFn sleep)
    : config_(std::move(config)), sleep_(std::move(sleep)) {
  config_.Validate();
  if (!sleep_) {
    sleep_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
  const char *key = std::getenv(config_.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw Error(ErrorKind::kConfig,
                "environment variable " + config_.api_key_env + " is not set");
  }
  api_key_ = key;
  const std::size_t scheme = config_.endpoint.find("://");
  const std::size_t slash = config_.endpoint.find('/', scheme + 3);
  if (slash == std::string::npos) {
    base_url_ = config_.endpoint;
    path_ = "/";
  } else {
    base_url_ = config_.endpoint.substr(0, slash);
    path_ = config_.endpoint.substr(slash);
  }
}

std::string LlmClient::Complete(const std::string &prompt) const {
  Json body = {{"model", config_.model_name},
               {"messages", Json::array({{{"role", "user"},
                                          {"content", prompt}}})},
               {"temperature", config_.temperature}};
  const std::string payload = body.dump();

  httplib::Client client(base_url_);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(config_.timeout);
  client.set_bearer_token_auth(api_key_);

  std::string last_failure;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) sleep_(config_.BackoffBefore(attempt));
    ++requests_sent_;
    httplib::Result result = client.Post(path_, payload, "application/json");
    if (!result) {
      last_failure = "connection failure: " + httplib::to_string(result.error());
      continue;
    }
    const int status = result->status;
    if (status == 429 || status >= 500) {
      last_failure = "status " + std::to_string(status);
      continue;
    }
    if (status < 200 || status >= 300) throw ApiError(status, result->body);
    try {
      const Json reply = Json::parse(result->body);
      return reply.at("choices").at(0).at("message").at("content")
          .get<std::string>();
    } catch (const Json::exception &e) {
      throw ParseError(std::string("unreadable completion body: ") + e.what(),
                       result->body);
    }
  }
  throw Error(ErrorKind::kTransport,
              "gave up after " + std::to_string(config_.max_retries + 1) +
                  " attempts: " + last_failure);
}

std::vector<Completion> LlmClient::CompleteAll(
    const std::vector<std::string> &prompts) const {
  std::vector<Completion> results(prompts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < prompts.size(); i = next++) {
      try {
        results[i].text = Complete(prompts[i]);
      } catch (...) {
        results[i].error = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min<std::size_t>(
      static_cast<std::size_t>(config_.parallelism), prompts.size());
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < workers; ++i) threads.emplace_back(worker);
  for (std::thread &t : threads) t.join();
  return results;
}

std::string Sha256Hex(const std::string &data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(ErrorKind::kInput, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xf];
  }
  return hex;
}

ResponseCache::ResponseCache(std::filesystem::path path) : path_(path) {
  if (!std::filesystem::exists(path)) return;
  ReadJsonLines(path, [&](const Json &row, std::size_t) {
    entries_[{row.at("prompt_sha256").get<std::string>(),
              row.at("model").get<std::string>()}] =
        row.at("response").get<std::string>();
  });
}

std::optional<std::string> ResponseCache::Get(const std::string &model,
                                              const std::string &prompt) const {
  const std::string hash = Sha256Hex(prompt);
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = entries_.find({hash, model});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ResponseCache::Put(const std::string &model, const std::string &prompt,
                        const std::string &response) {
  const std::string hash = Sha256Hex(prompt);
  std::lock_guard<std::mutex> lock(mutex_);
  entries_[{hash, model}] = response;
  if (!path_) return;
  if (path_->has_parent_path()) {
    std::filesystem::create_directories(path_->parent_path());
  }
  std::ofstream out(*path_, std::ios::app | std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot append to " + path_->string());
  const Json row = {{"prompt_sha256", hash},
                    {"model", model},
                    {"response", response}};
  out << row.dump() << '\n';
}

std::size_t ResponseCache::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.size();
}

}  // namespace quoteattr
