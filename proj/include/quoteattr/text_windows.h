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

// Bounded context passages around a quotation.
//
// Token windows (English-style corpora) count surface tokens: runs of word
// characters, with internal apostrophes and hyphens, plus one token per other
// non-space character. Chinese text is tokenized one code point per token.
//
// Sentence windows (Chinese-style corpora) count sentences from
// SplitSentences. Sentence boundaries:
//   zh: after runs of 。！？；… (or ，： too in short-clause mode), with
//       trailing closing quotes/brackets attached to the sentence;
//   en: after runs of . ! ? followed by whitespace or end of text, with
//       trailing closing quotes attached; a period after an abbreviation
//       (Mr. Mrs. Dr. St. ...) or a single capital initial does not split;
//   both: after a newline.
// Trailing whitespace belongs to the preceding sentence, so the sentences
// always partition the input.

#ifndef QUOTEATTR_TEXT_WINDOWS_H_
#define QUOTEATTR_TEXT_WINDOWS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quoteattr/corpus.h"

namespace quoteattr {

inline constexpr std::size_t kDefaultTokensBefore = 150;
inline constexpr std::size_t kDefaultTokensAfter = 30;
inline constexpr std::size_t kDefaultSentencesBefore = 5;
inline constexpr std::size_t kDefaultSentencesAfter = 5;

// Half-open range of token indices.
struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const TokenRange &, const TokenRange &) = default;
};

struct Passage {
  std::string text;          // UTF-8
  CharRange quote_range;     // code points, relative to `text`
  CharRange source_range;    // code points in the source document

  friend bool operator==(const Passage &, const Passage &) = default;
};

std::vector<CharRange> Tokenize(std::u32string_view text, Lang lang);

// Tokens overlapping `span`. Throws kBounds when none does.
TokenRange TokensCovering(std::span<const CharRange> tokens,
                          const CharRange &span);

struct SentenceOptions {
  // Also split on ，and ：(zh only).
  bool short_clauses = false;
  // Never split inside this span; force boundaries at its edges.
  std::optional<CharRange> atomic_span;
};

std::vector<CharRange> SplitSentences(std::u32string_view text, Lang lang,
                                      const SentenceOptions &options = {});

// Passage over tokens [max(0, q.begin - before), min(n, q.end + after)).
// Throws kBounds for an empty or out-of-range quotation range.
Passage TokenWindow(std::u32string_view doc, std::span<const CharRange> tokens,
                    TokenRange quote, std::size_t before = kDefaultTokensBefore,
                    std::size_t after = kDefaultTokensAfter);

struct SentenceContext {
  Passage passage;
  std::vector<CharRange> before;  // document ranges, in text order
  std::vector<CharRange> after;
};

// Up to `before` sentences strictly before the quotation, the quotation,
// and up to `after` sentences strictly after it. The quotation is its own
// unit. Throws kBounds when the span is empty or outside `doc`.
SentenceContext SentenceWindowContext(std::u32string_view doc,
                                      const CharRange &quote_span, Lang lang,
                                      std::size_t before,
                                      std::size_t after,
                                      bool short_clauses = false);

Passage SentenceWindow(std::u32string_view doc, const CharRange &quote_span,
                       Lang lang, std::size_t before = kDefaultSentencesBefore,
                       std::size_t after = kDefaultSentencesAfter,
                       bool short_clauses = false);

}  // namespace quoteattr

#endif  // QUOTEATTR_TEXT_WINDOWS_H_
