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

// Identification backends: segment in, Prediction out.

#ifndef QUOTEATTR_BACKENDS_H_
#define QUOTEATTR_BACKENDS_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quoteattr/error.h"
#include "quoteattr/llm_client.h"
#include "quoteattr/prompting.h"
#include "quoteattr/rule_baseline.h"
#include "quoteattr/segment.h"
#include "quoteattr/seq2seq.h"

namespace quoteattr {

inline constexpr std::size_t kDefaultExemplarCount = 2;

struct PromptMode {
  enum class Kind { kZeroShot, kFewShot };

  Kind kind = Kind::kZeroShot;
  std::size_t k = 0;
  // Few-shot exemplars per language.
  std::map<Lang, std::vector<Exemplar>> exemplars;

  static PromptMode ZeroShot() { return {}; }
  // "zero", "few" (k = 2) or "few:K". Exemplars are left empty.
  static PromptMode Parse(std::string_view text);
  std::string ToString() const;
};

// Templates by language; languages without an entry use the default.
using TemplateSet = std::map<Lang, PromptTemplate>;
PromptTemplate TemplateFor(const TemplateSet &templates, Lang lang);

// The annotated answer of a segment, as mention surfaces.
Prediction GoldPrediction(const Segment &segment);
Exemplar MakeExemplar(const Segment &segment);

// First `k` segments of each language by id.
std::map<Lang, std::vector<Exemplar>> SelectExemplars(
    std::span<const Segment> train, std::size_t k = kDefaultExemplarCount);

// Throws kConfig when a few-shot mode has no exemplars for the segment's
// language.
std::string RenderPrompt(const PromptTemplate &tmpl, const Segment &segment,
                         const PromptMode &mode);

struct IdentifyOutcome {
  std::string segment_id;
  std::optional<Prediction> prediction;
  std::optional<ErrorKind> error_kind;
  std::string error_message;
  std::string raw_response;  // kept for parse failures
  bool truncated = false;

  bool ok() const { return prediction.has_value(); }
};

class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string name() const = 0;

  // Throws IdentifyError carrying the segment id.
  virtual Prediction Identify(const Segment &segment,
                              const PromptMode &mode) = 0;

  // One outcome per segment, in input order; failures are captured rather
  // than thrown.
  virtual std::vector<IdentifyOutcome> IdentifyAll(
      std::span<const Segment> segments, const PromptMode &mode);
};

// Deterministic rule baseline; ignores the prompt mode.
class RuleBackend : public Backend {
 public:
  explicit RuleBackend(RuleLexicon lexicon = {}) : lexicon_(std::move(lexicon)) {}
  std::string name() const override { return "rule"; }
  Prediction Identify(const Segment &segment, const PromptMode &mode) override;

 private:
  RuleLexicon lexicon_;
};

// Chat LLM behind a response cache. Without a client the backend replays
// the cache only and a miss is a kConfig error.
class LlmBackend : public Backend {
 public:
  LlmBackend(std::shared_ptr<const LlmClient> client,
             std::shared_ptr<ResponseCache> cache, std::string model_name,
             TemplateSet templates = {});

  std::string name() const override { return "llm"; }
  Prediction Identify(const Segment &segment, const PromptMode &mode) override;
  // Uncached prompts go out concurrently through LlmClient::CompleteAll.
  std::vector<IdentifyOutcome> IdentifyAll(std::span<const Segment> segments,
                                           const PromptMode &mode) override;

 private:
  std::string Respond(const std::string &prompt);

  std::shared_ptr<const LlmClient> client_;
  std::shared_ptr<ResponseCache> cache_;
  std::string model_name_;
  TemplateSet templates_;
};

class Seq2SeqBackend : public Backend {
 public:
  Seq2SeqBackend(std::shared_ptr<Seq2SeqAdapter> adapter,
                 TemplateSet templates = {});

  std::string name() const override { return "seq2seq"; }
  Prediction Identify(const Segment &segment, const PromptMode &mode) override;
  std::vector<IdentifyOutcome> IdentifyAll(std::span<const Segment> segments,
                                           const PromptMode &mode) override;

 private:
  std::shared_ptr<Seq2SeqAdapter> adapter_;
  TemplateSet templates_;
};

struct ExportSummary {
  std::size_t pairs = 0;
  std::size_t truncated = 0;  // prompts longer than max_text_length
};

// Writes one {"id", "prompt", "target"} object per line for external
// fine-tuning. Prompts are zero-shot; targets are FormatAnswer of the gold.
ExportSummary ExportTrainingPairs(std::span<const Segment> segments,
                                  const TemplateSet &templates,
                                  std::size_t max_text_length,
                                  const std::filesystem::path &path);

}  // namespace quoteattr

#endif  // QUOTEATTR_BACKENDS_H_
