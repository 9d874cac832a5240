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

#include "quoteattr/backends.h"

#include <algorithm>
#include <charconv>
#include <set>

#include "quoteattr/jsonl.h"

namespace quoteattr {

PromptMode PromptMode::Parse(std::string_view text) {
  if (text == "zero") return ZeroShot();
  PromptMode mode;
  mode.kind = Kind::kFewShot;
  mode.k = kDefaultExemplarCount;
  if (text == "few") return mode;
  if (text.starts_with("few:")) {
    const std::string_view digits = text.substr(4);
    std::size_t k = 0;
    auto [end, ec] = std::from_chars(digits.data(),
                                     digits.data() + digits.size(), k);
    if (ec == std::errc() && end == digits.data() + digits.size() && k > 0) {
      mode.k = k;
      return mode;
    }
  }
  throw Error(ErrorKind::kConfig, "bad mode '" + std::string(text) +
                                      "' (expected zero or few:K)");
}

std::string PromptMode::ToString() const {
  return kind == Kind::kZeroShot ? "zero" : "few:" + std::to_string(k);
}

PromptTemplate TemplateFor(const TemplateSet &templates, Lang lang) {
  auto it = templates.find(lang);
  return it == templates.end() ? PromptTemplate::Default(lang) : it->second;
}

Prediction GoldPrediction(const Segment &segment) {
  Prediction gold;
  gold.speaker = segment.quotation.speaker.surface;
  for (const Mention &addressee : segment.quotation.addressees) {
    gold.addressees.push_back(addressee.surface);
  }
  return gold;
}

Exemplar MakeExemplar(const Segment &segment) {
  const Prediction gold = GoldPrediction(segment);
  return {segment.passage.text, segment.QuoteText(), gold.speaker,
          gold.addressees};
}

std::map<Lang, std::vector<Exemplar>> SelectExemplars(
    std::span<const Segment> train, std::size_t k) {
  std::vector<const Segment *> sorted;
  for (const Segment &segment : train) sorted.push_back(&segment);
  std::sort(sorted.begin(), sorted.end(),
            [](const Segment *a, const Segment *b) { return a->id() < b->id(); });
  std::map<Lang, std::vector<Exemplar>> exemplars;
  for (const Segment *segment : sorted) {
    std::vector<Exemplar> &chosen = exemplars[segment->lang];
    if (chosen.size() < k) chosen.push_back(MakeExemplar(*segment));
  }
  return exemplars;
}

std::string RenderPrompt(const PromptTemplate &tmpl, const Segment &segment,
                         const PromptMode &mode) {
  if (mode.kind == PromptMode::Kind::kZeroShot) {
    return RenderZeroShot(tmpl, segment.passage, segment.QuoteText());
  }
  auto it = mode.exemplars.find(segment.lang);
  if (it == mode.exemplars.end() || it->second.empty()) {
    throw Error(ErrorKind::kConfig, "few-shot mode has no " +
                                        std::string(LangName(segment.lang)) +
                                        " exemplars");
  }
  return RenderFewShot(tmpl, it->second, segment.passage, segment.QuoteText());
}

namespace {

IdentifyOutcome Failure(const std::string &id, const Error &error) {
  IdentifyOutcome outcome;
  outcome.segment_id = id;
  outcome.error_kind = error.kind();
  outcome.error_message = error.what();
  if (auto *parse = dynamic_cast<const ParseError *>(&error)) {
    outcome.raw_response = parse->raw();
  }
  return outcome;
}

IdentifyOutcome Success(const std::string &id, Prediction prediction) {
  IdentifyOutcome outcome;
  outcome.segment_id = id;
  outcome.prediction = std::move(prediction);
  return outcome;
}

// Rethrows any Error from `fn` as an IdentifyError for `segment`.
template <typename Fn>
auto WithSegment(const Segment &segment, Fn fn) {
  try {
    return fn();
  } catch (const IdentifyError &) {
    throw;
  } catch (const ParseError &e) {
    throw ParseError("segment " + segment.id() + ": " + e.what(), e.raw());
  } catch (const Error &e) {
    throw IdentifyError(segment.id(), e);
  }
}

}  // namespace

std::vector<IdentifyOutcome> Backend::IdentifyAll(
    std::span<const Segment> segments, const PromptMode &mode) {
  std::vector<IdentifyOutcome> outcomes;
  for (const Segment &segment : segments) {
    try {
      outcomes.push_back(Success(segment.id(), Identify(segment, mode)));
    } catch (const Error &e) {
      outcomes.push_back(Failure(segment.id(), e));
    }
  }
  return outcomes;
}

Prediction RuleBackend::Identify(const Segment &segment, const PromptMode &) {
  return WithSegment(segment, [&] { return RuleIdentify(segment, lexicon_); });
}

LlmBackend::LlmBackend(std::shared_ptr<const LlmClient> client,
                       std::shared_ptr<ResponseCache> cache,
                       std::string model_name, TemplateSet templates)
    : client_(std::move(client)),
      cache_(cache ? std::move(cache) : std::make_shared<ResponseCache>()),
      model_name_(std::move(model_name)),
      templates_(std::move(templates)) {}

std::string LlmBackend::Respond(const std::string &prompt) {
  if (auto cached = cache_->Get(model_name_, prompt)) return *cached;
  if (!client_) {
    throw Error(ErrorKind::kConfig,
                "no cached response and no llm client configured");
  }
  std::string response = client_->Complete(prompt);
  cache_->Put(model_name_, prompt, response);
  return response;
}

Prediction LlmBackend::Identify(const Segment &segment,
                                const PromptMode &mode) {
  return WithSegment(segment, [&] {
    const std::string prompt =
        RenderPrompt(TemplateFor(templates_, segment.lang), segment, mode);
    return ParsePrediction(Respond(prompt), segment.lang);
  });
}

std::vector<IdentifyOutcome> LlmBackend::IdentifyAll(
    std::span<const Segment> segments, const PromptMode &mode) {
  std::vector<IdentifyOutcome> outcomes(segments.size());
  std::vector<std::optional<std::string>> prompts(segments.size());
  std::vector<std::string> pending;
  std::set<std::string> pending_set;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    try {
      prompts[i] = RenderPrompt(TemplateFor(templates_, segments[i].lang),
                                segments[i], mode);
    } catch (const Error &e) {
      outcomes[i] = Failure(segments[i].id(), e);
      continue;
    }
    if (!cache_->Get(model_name_, *prompts[i]) &&
        pending_set.insert(*prompts[i]).second) {
      pending.push_back(*prompts[i]);
    }
  }

  std::map<std::string, Completion> fresh;
  if (!pending.empty() && client_) {
    std::vector<Completion> done = client_->CompleteAll(pending);
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (done[i].ok()) cache_->Put(model_name_, pending[i], done[i].text);
      fresh[pending[i]] = std::move(done[i]);
    }
  }

  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (!prompts[i]) continue;
    const Segment &segment = segments[i];
    try {
      std::optional<std::string> response = cache_->Get(model_name_, *prompts[i]);
      if (!response) {
        auto it = fresh.find(*prompts[i]);
        if (it == fresh.end()) {
          throw Error(ErrorKind::kConfig,
                      "no cached response and no llm client configured");
        }
        std::rethrow_exception(it->second.error);
      }
      Prediction prediction = ParsePrediction(*response, segment.lang);
      outcomes[i] = Success(segment.id(), std::move(prediction));
    } catch (const Error &e) {
      outcomes[i] = Failure(segment.id(), e);
    }
  }
  return outcomes;
}

Seq2SeqBackend::Seq2SeqBackend(std::shared_ptr<Seq2SeqAdapter> adapter,
                               TemplateSet templates)
    : adapter_(std::move(adapter)), templates_(std::move(templates)) {
  if (!adapter_) throw Error(ErrorKind::kLoad, "no seq2seq adapter");
}

Prediction Seq2SeqBackend::Identify(const Segment &segment,
                                    const PromptMode &mode) {
  return WithSegment(segment, [&] {
    const std::string prompt =
        RenderPrompt(TemplateFor(templates_, segment.lang), segment, mode);
    return ParsePrediction(adapter_->Predict(prompt, segment.lang).text,
                           segment.lang);
  });
}

std::vector<IdentifyOutcome> Seq2SeqBackend::IdentifyAll(
    std::span<const Segment> segments, const PromptMode &mode) {
  std::vector<IdentifyOutcome> outcomes;
  for (const Segment &segment : segments) {
    bool truncated = false;
    try {
      const std::string prompt =
          RenderPrompt(TemplateFor(templates_, segment.lang), segment, mode);
      const Seq2SeqOutput output = adapter_->Predict(prompt, segment.lang);
      truncated = output.truncated;
      outcomes.push_back(
          Success(segment.id(), ParsePrediction(output.text, segment.lang)));
    } catch (const Error &e) {
      outcomes.push_back(Failure(segment.id(), e));
    }
    outcomes.back().truncated = truncated;
  }
  return outcomes;
}

ExportSummary ExportTrainingPairs(std::span<const Segment> segments,
                                  const TemplateSet &templates,
                                  std::size_t max_text_length,
                                  const std::filesystem::path &path) {
  ExportSummary summary;
  std::vector<Json> rows;
  for (const Segment &segment : segments) {
    const std::string prompt = RenderPrompt(
        TemplateFor(templates, segment.lang), segment, PromptMode::ZeroShot());
    if (TruncateTokens(prompt, segment.lang, max_text_length).truncated) {
      ++summary.truncated;
    }
    rows.push_back({{"id", segment.id()},
                    {"prompt", prompt},
                    {"target", FormatAnswer(GoldPrediction(segment),
                                            segment.lang)}});
  }
  WriteJsonLines(path, rows);
  summary.pairs = rows.size();
  return summary;
}

}  // namespace quoteattr
