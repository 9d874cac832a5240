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

// A Segment is the unit of identification: one quotation, its bounded
// context, and the characters that could be speaker or addressee.

#ifndef QUOTEATTR_SEGMENT_H_
#define QUOTEATTR_SEGMENT_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quoteattr/corpus.h"
#include "quoteattr/text_windows.h"

namespace quoteattr {

struct WindowSpec {
  enum class Kind { kToken, kSentence };

  Kind kind = Kind::kSentence;
  std::size_t before = kDefaultSentencesBefore;
  std::size_t after = kDefaultSentencesAfter;

  static WindowSpec Tokens(std::size_t before = kDefaultTokensBefore,
                           std::size_t after = kDefaultTokensAfter) {
    return {Kind::kToken, before, after};
  }
  static WindowSpec Sentences(std::size_t before = kDefaultSentencesBefore,
                              std::size_t after = kDefaultSentencesAfter) {
    return {Kind::kSentence, before, after};
  }
  // Tokens (150, 30) for en, sentences (5, 5) for zh.
  static WindowSpec DefaultFor(Lang lang);

  // "token:150:30" or "sent:5:5". Throws kConfig.
  static WindowSpec Parse(std::string_view text);
  std::string ToString() const;

  friend bool operator==(const WindowSpec &, const WindowSpec &) = default;
};

struct ContextSentence {
  std::string text;
  CharRange range;  // in the novel
};

struct Segment {
  QuotationRecord quotation;
  Lang lang = Lang::kZh;
  Passage passage;
  std::vector<ContextSentence> pre_context;
  std::vector<ContextSentence> post_context;
  std::vector<CharacterEntity> candidates;

  const std::string &id() const { return quotation.id; }
  // Quotation text as it appears in the passage.
  std::string QuoteText() const;
};

// A candidate mention found in a passage.
struct CandidateMention {
  std::size_t candidate = 0;  // index into the candidate list
  std::string surface;
  CharRange range;            // code points in the searched text
};

// Leftmost-longest, non-overlapping alias matches of `candidates` in `text`.
// For en, matches must sit on word boundaries; matching is case-sensitive.
std::vector<CandidateMention> FindCandidateMentions(
    std::u32string_view text, std::span<const CharacterEntity> candidates,
    Lang lang);

// Builds the segment for `record`. Candidates are the record's explicit
// candidate list when present; otherwise every roster entity with an alias
// occurring in the passage, ordered by first occurrence.
Segment BuildSegment(const Corpus &corpus, const QuotationRecord &record,
                     const WindowSpec &window);

// One segment per quotation, in corpus order; each novel uses `window` or,
// when `window` is empty, WindowSpec::DefaultFor(novel.lang).
std::vector<Segment> BuildSegments(const Corpus &corpus,
                                   const std::optional<WindowSpec> &window);

}  // namespace quoteattr

#endif  // QUOTEATTR_SEGMENT_H_
