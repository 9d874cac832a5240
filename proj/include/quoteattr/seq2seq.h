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

// Boundary to an externally trained sequence-to-sequence model. Training
// happens elsewhere on exported (prompt, target) pairs; this side only
// truncates inputs and runs greedy inference through a Seq2SeqModel.

#ifndef QUOTEATTR_SEQ2SEQ_H_
#define QUOTEATTR_SEQ2SEQ_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "quoteattr/corpus.h"

namespace quoteattr {

struct TrainConfig {
  std::size_t batch_size = 2;
  std::size_t epochs = 32;
  double learning_rate = 7e-5;
  std::size_t max_text_length = 512;

  // English T5 and Chinese PromptCLUE settings.
  static TrainConfig RiquaT5() { return {2, 32, 7e-5, 512}; }
  static TrainConfig JyPromptClue() { return {4, 12, 8e-5, 512}; }
  static TrainConfig DefaultFor(Lang lang) {
    return lang == Lang::kZh ? JyPromptClue() : RiquaT5();
  }

  // Throws kConfig unless every field is positive.
  void Validate() const;
};

class Seq2SeqModel {
 public:
  virtual ~Seq2SeqModel() = default;
  virtual std::string name() const = 0;
  // Greedy decode of `input`.
  virtual std::string Generate(const std::string &input) = 0;
};

// Returns the same string for every input.
class EchoModel : public Seq2SeqModel {
 public:
  explicit EchoModel(std::string output) : output_(std::move(output)) {}
  std::string name() const override { return "echo"; }
  std::string Generate(const std::string &) override { return output_; }

 private:
  std::string output_;
};

// Recorded model outputs: JSON Lines of {"input_sha256", "output"} (or
// {"input", "output"}). Throws kLoad when the file is missing; Generate
// throws kLoad for an unrecorded input.
class ReplayModel : public Seq2SeqModel {
 public:
  explicit ReplayModel(const std::filesystem::path &path);
  std::string name() const override { return "replay"; }
  std::string Generate(const std::string &input) override;

 private:
  std::map<std::string, std::string> outputs_;  // by input hash
};

// Runs `<executable> <model_dir>` once per input, with the input on stdin
// and the output read from stdout. Throws kLoad when either path is
// missing.
class ExternalCommandModel : public Seq2SeqModel {
 public:
  ExternalCommandModel(std::filesystem::path executable,
                       std::filesystem::path model_dir);
  std::string name() const override { return "external"; }
  std::string Generate(const std::string &input) override;

 private:
  std::filesystem::path executable_;
  std::filesystem::path model_dir_;
};

struct Truncation {
  std::string text;
  std::size_t tokens = 0;  // before truncation
  bool truncated = false;
};

// Keeps the first `max_tokens` surface tokens of `text`.
Truncation TruncateTokens(const std::string &text, Lang lang,
                          std::size_t max_tokens);

struct Seq2SeqOutput {
  std::string text;
  bool truncated = false;
};

// Serializes calls into the wrapped model.
class Seq2SeqAdapter {
 public:
  Seq2SeqAdapter(std::unique_ptr<Seq2SeqModel> model, TrainConfig config);

  Seq2SeqOutput Predict(const std::string &prompt, Lang lang);
  const TrainConfig &config() const { return config_; }
  std::string model_name() const { return model_->name(); }

 private:
  std::unique_ptr<Seq2SeqModel> model_;
  TrainConfig config_;
  std::mutex mutex_;
};

}  // namespace quoteattr

#endif  // QUOTEATTR_SEQ2SEQ_H_
