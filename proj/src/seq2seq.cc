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

#include "quoteattr/seq2seq.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>

#include "quoteattr/error.h"
#include "quoteattr/jsonl.h"
#include "quoteattr/llm_client.h"
#include "quoteattr/text_windows.h"
#include "quoteattr/utf8.h"

namespace quoteattr {

void TrainConfig::Validate() const {
  if (batch_size == 0 || epochs == 0 || !(learning_rate > 0) ||
      max_text_length == 0) {
    throw Error(ErrorKind::kConfig,
                "train config fields must all be positive");
  }
}

ReplayModel::ReplayModel(const std::filesystem::path &path) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorKind::kLoad, "model artifact not found: " + path.string());
  }
  ReadJsonLines(path, [&](const Json &row, std::size_t) {
    const std::string hash = row.contains("input_sha256")
                                 ? row.at("input_sha256").get<std::string>()
                                 : Sha256Hex(row.at("input").get<std::string>());
    outputs_[hash] = row.at("output").get<std::string>();
  });
}

std::string ReplayModel::Generate(const std::string &input) {
  auto it = outputs_.find(Sha256Hex(input));
  if (it == outputs_.end()) {
    throw Error(ErrorKind::kLoad, "replay model has no output for input " +
                                      Sha256Hex(input).substr(0, 12));
  }
  return it->second;
}

ExternalCommandModel::ExternalCommandModel(std::filesystem::path executable,
                                           std::filesystem::path model_dir)
    : executable_(std::move(executable)), model_dir_(std::move(model_dir)) {
  if (!std::filesystem::exists(executable_)) {
    throw Error(ErrorKind::kLoad,
                "inference command not found: " + executable_.string());
  }
  if (!std::filesystem::exists(model_dir_)) {
    throw Error(ErrorKind::kLoad,
                "model artifact not found: " + model_dir_.string());
  }
}

namespace {

std::string ShellQuote(const std::string &s) {
  std::string quoted = "'";
  for (char c : s) {
    if (c == '\'') {
      quoted += "'\\''";
    } else {
      quoted += c;
    }
  }
  return quoted + "'";
}

}  // namespace

std::string ExternalCommandModel::Generate(const std::string &input) {
  char name[] = "/tmp/quoteattr-s2s-XXXXXX";
  const int fd = mkstemp(name);
  if (fd < 0) throw Error(ErrorKind::kIo, "cannot create temporary file");
  close(fd);
  WriteFile(name, input);
  const std::string command = ShellQuote(executable_.string()) + " " +
                              ShellQuote(model_dir_.string()) + " < " +
                              ShellQuote(name);
  FILE *pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) {
    std::remove(name);
    throw Error(ErrorKind::kLoad, "cannot run " + executable_.string());
  }
  std::string output;
  char buffer[4096];
  for (std::size_t n; (n = fread(buffer, 1, sizeof buffer, pipe)) > 0;) {
    output.append(buffer, n);
  }
  const int status = pclose(pipe);
  std::remove(name);
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw Error(ErrorKind::kLoad,
                "inference command failed: " + executable_.string());
  }
  while (!output.empty() && (output.back() == '\n' || output.back() == '\r')) {
    output.pop_back();
  }
  return output;
}

Truncation TruncateTokens(const std::string &text, Lang lang,
                          std::size_t max_tokens) {
  const std::u32string decoded = Utf8Decode(text);
  const std::vector<CharRange> tokens = Tokenize(decoded, lang);
  Truncation result{text, tokens.size(), false};
  if (tokens.size() > max_tokens) {
    const std::size_t end = max_tokens == 0 ? 0 : tokens[max_tokens - 1].end;
    result.text = Utf8Encode(std::u32string_view(decoded).substr(0, end));
    result.truncated = true;
  }
  return result;
}

Seq2SeqAdapter::Seq2SeqAdapter(std::unique_ptr<Seq2SeqModel> model,
                               TrainConfig config)
    : model_(std::move(model)), config_(config) {
  if (!model_) throw Error(ErrorKind::kLoad, "no seq2seq model loaded");
  config_.Validate();
}

Seq2SeqOutput Seq2SeqAdapter::Predict(const std::string &prompt, Lang lang) {
  const Truncation input = TruncateTokens(prompt, lang, config_.max_text_length);
  std::lock_guard<std::mutex> lock(mutex_);
  return {model_->Generate(input.text), input.truncated};
}

}  // namespace quoteattr
