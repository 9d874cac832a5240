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

// Identification prompts and answer parsing.
//
// A prompt is laid out as
//
//   <preamble>
//
//   <exemplar 1>        (few-shot only, one block per exemplar)
//
//   <question>
//   <answer format instruction>
//
// Patterns use {name} placeholders. The question pattern must reference
// {context} and {quotation}; exemplar patterns may also use {speaker} and
// {addressee}. Unknown or unterminated placeholders are template errors.
//
// Answers have the shape
//   en:  Speaker: "he", Addressee: "Kuzmitchov"
//   zh:  说话人：“黄蓉”，听话人：“陆庄主”
// with multiple addressees joined by ", " (en) or 、(zh).

#ifndef QUOTEATTR_PROMPTING_H_
#define QUOTEATTR_PROMPTING_H_

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quoteattr/corpus.h"
#include "quoteattr/text_windows.h"

namespace quoteattr {

struct PromptTemplate {
  Lang lang = Lang::kEn;
  std::string preamble;
  std::string question_pattern;
  std::string answer_format_instruction;
  std::string exemplar_pattern;

  static PromptTemplate Default(Lang lang);
  // JSON object with the five fields above ("lang" as "zh"/"en"). Missing
  // fields fall back to the language default. Throws kTemplate when a
  // pattern is invalid.
  static PromptTemplate FromFile(const std::filesystem::path &path);

  // Throws kTemplate when a required placeholder is missing or a pattern
  // references a placeholder outside its fill set.
  void Validate() const;
};

// Substitutes {name} placeholders. Every referenced name must be in
// `values`; "{{" and "}}" produce literal braces.
std::string FillPattern(std::string_view pattern,
                        const std::map<std::string, std::string> &values);

struct Prediction {
  std::string speaker;
  std::vector<std::string> addressees;
  std::string raw_response;

  friend bool operator==(const Prediction &, const Prediction &) = default;
};

struct Exemplar {
  std::string context;
  std::string quotation;
  std::string speaker;
  std::vector<std::string> addressees;
};

// ", " for en, 、for zh.
std::string_view AddresseeDelimiter(Lang lang);
std::string JoinAddressees(std::span<const std::string> addressees, Lang lang);

std::string RenderZeroShot(const PromptTemplate &tmpl, const Passage &passage,
                           std::string_view quotation_text);

// Throws kConfig when `exemplars` is empty.
std::string RenderFewShot(const PromptTemplate &tmpl,
                          std::span<const Exemplar> exemplars,
                          const Passage &passage,
                          std::string_view quotation_text);

// Canonical answer string for `prediction` (raw_response is ignored).
std::string FormatAnswer(const Prediction &prediction, Lang lang);

// Locates the speaker and addressee fields in a free-form response. Labels
// (Speaker/Addressee, case-insensitive, or 说话人/听话人) must be followed by
// a half- or full-width colon; the first occurrence of each label wins and
// field order does not matter. Values are cut at the next label, a newline
// or a semicolon, stripped of quote marks, punctuation and whitespace, and
// addressees are split on the language's list separators (zh: 、，, 和;
// en: "," and the word "and") and deduplicated in order.
//
// A missing field yields an empty value. Throws ParseError (carrying the
// response) when neither field is present.
Prediction ParsePrediction(std::string_view response, Lang lang);

}  // namespace quoteattr

#endif  // QUOTEATTR_PROMPTING_H_
