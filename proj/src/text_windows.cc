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

#include "quoteattr/text_windows.h"

#include <algorithm>
#include <array>
#include <set>

#include "quoteattr/error.h"
#include "quoteattr/utf8.h"

namespace quoteattr {

namespace {

bool IsClosingMark(char32_t c) {
  switch (c) {
    case U'"': case U'\'': case U')': case U']':
    case U'”': case U'’': case U'」': case U'』': case U'）': case U'》':
    case U'〉': case U'】':
      return true;
    default:
      return false;
  }
}

bool IsZhTerminal(char32_t c, bool short_clauses) {
  switch (c) {
    case U'。': case U'！': case U'？': case U'；': case U'…':
    case U'!': case U'?':
      return true;
    case U'，': case U'：':
      return short_clauses;
    default:
      return false;
  }
}

bool IsEnTerminal(char32_t c) { return c == U'.' || c == U'!' || c == U'?'; }

bool IsNewline(char32_t c) {
  return c == U'\n' || c == U'\r' || c == 0x2028 || c == 0x2029;
}

// Lowercase, without the trailing period.
const std::set<std::u32string> &Abbreviations() {
  static const std::set<std::u32string> kAbbreviations = {
      U"mr",   U"mrs",  U"ms",   U"dr",   U"st",    U"jr",   U"sr",
      U"prof", U"mme",  U"mlle", U"messrs", U"capt", U"col",  U"gen",
      U"lt",   U"rev",  U"hon",  U"vs",   U"etc",   U"e.g",  U"i.e",
      U"no",   U"mt",   U"sgt",  U"gov",  U"esq",   U"fr",   U"ave",
  };
  return kAbbreviations;
}

// True when the period at `dot` terminates an abbreviation or an initial.
bool IsAbbreviationDot(std::u32string_view text, std::size_t dot) {
  std::size_t begin = dot;
  while (begin > 0 && (IsWordChar(text[begin - 1]) || text[begin - 1] == U'.')) {
    --begin;
  }
  if (begin == dot) return false;
  std::u32string word = AsciiFold(text.substr(begin, dot - begin));
  if (Abbreviations().contains(word)) return true;
  // Single capital initial, e.g. "J. Smith".
  return dot - begin == 1 && text[begin] >= U'A' && text[begin] <= U'Z';
}

bool AllWhitespace(std::u32string_view text) {
  return std::all_of(text.begin(), text.end(), IsWhitespace);
}

}  // namespace

std::vector<CharRange> Tokenize(std::u32string_view text, Lang lang) {
  std::vector<CharRange> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char32_t c = text[i];
    if (IsWhitespace(c)) {
      ++i;
      continue;
    }
    if (lang == Lang::kEn && IsWordChar(c)) {
      std::size_t j = i + 1;
      while (j < text.size()) {
        if (IsWordChar(text[j])) {
          ++j;
        } else if ((text[j] == U'\'' || text[j] == U'’' || text[j] == U'-') &&
                   j + 1 < text.size() && IsWordChar(text[j + 1])) {
          j += 2;
        } else {
          break;
        }
      }
      tokens.push_back({i, j});
      i = j;
      continue;
    }
    tokens.push_back({i, i + 1});
    ++i;
  }
  return tokens;
}

TokenRange TokensCovering(std::span<const CharRange> tokens,
                          const CharRange &span) {
  TokenRange range{tokens.size(), 0};
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].Overlaps(span)) {
      range.begin = std::min(range.begin, i);
      range.end = i + 1;
    }
  }
  if (range.end == 0) {
    throw Error(ErrorKind::kBounds, "no token overlaps span [" +
                                        std::to_string(span.start) + "," +
                                        std::to_string(span.end) + ")");
  }
  return range;
}

std::vector<CharRange> SplitSentences(std::u32string_view text, Lang lang,
                                      const SentenceOptions &options) {
  const std::size_t n = text.size();
  if (n == 0) return {};

  // Sentence end positions, exclusive.
  std::set<std::size_t> ends;
  std::size_t i = 0;
  while (i < n) {
    const char32_t c = text[i];
    std::size_t j = i;
    if (IsNewline(c)) {
      while (j < n && IsWhitespace(text[j])) ++j;
      ends.insert(j);
      i = j;
      continue;
    }
    bool terminal = false;
    if (lang == Lang::kZh) {
      if (IsZhTerminal(c, options.short_clauses)) {
        while (j < n && IsZhTerminal(text[j], options.short_clauses)) ++j;
        terminal = true;
      }
    } else if (IsEnTerminal(c)) {
      while (j < n && IsEnTerminal(text[j])) ++j;
      // A lone period after an abbreviation or initial does not end a
      // sentence.
      terminal = !(j == i + 1 && c == U'.' && IsAbbreviationDot(text, i));
    }
    if (!terminal) {
      ++i;
      continue;
    }
    while (j < n && IsClosingMark(text[j])) ++j;
    if (lang == Lang::kEn && j < n && !IsWhitespace(text[j])) {
      // "3.14", "e.g.x": not a boundary.
      i = j;
      continue;
    }
    while (j < n && IsWhitespace(text[j]) && !IsNewline(text[j])) ++j;
    if (j < n && IsNewline(text[j])) {
      while (j < n && IsWhitespace(text[j])) ++j;
    }
    ends.insert(j);
    i = j;
  }
  ends.insert(n);

  if (options.atomic_span) {
    const CharRange &atomic = *options.atomic_span;
    for (auto it = ends.begin(); it != ends.end();) {
      it = (*it > atomic.start && *it < atomic.end) ? ends.erase(it)
                                                     : std::next(it);
    }
    if (atomic.start > 0 && atomic.start < n) ends.insert(atomic.start);
    if (atomic.end > 0 && atomic.end < n) ends.insert(atomic.end);
  }

  std::vector<CharRange> pieces;
  std::size_t start = 0;
  for (std::size_t end : ends) {
    if (end > start) pieces.push_back({start, end});
    start = end;
  }

  // Whitespace-only pieces join their predecessor, or their successor when
  // the predecessor is the atomic span.
  auto is_atomic = [&](const CharRange &piece) {
    return options.atomic_span && piece == *options.atomic_span;
  };
  auto blank = [&](const CharRange &piece) {
    return AllWhitespace(text.substr(piece.start, piece.size()));
  };
  std::vector<CharRange> sentences;
  bool carry = false;  // previous blank piece awaits the next sentence
  std::size_t carry_start = 0;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const CharRange &piece = pieces[k];
    if (blank(piece)) {
      if (!sentences.empty() && !is_atomic(sentences.back()) && !carry) {
        sentences.back().end = piece.end;
        continue;
      }
      if (k + 1 < pieces.size() && !is_atomic(pieces[k + 1])) {
        if (!carry) carry_start = piece.start;
        carry = true;
        continue;
      }
    }
    CharRange sentence = piece;
    if (carry) {
      sentence.start = carry_start;
      carry = false;
    }
    sentences.push_back(sentence);
  }
  return sentences;
}

Passage TokenWindow(std::u32string_view doc, std::span<const CharRange> tokens,
                    TokenRange quote, std::size_t before, std::size_t after) {
  if (quote.begin >= quote.end || quote.end > tokens.size()) {
    throw Error(ErrorKind::kBounds,
                "quotation token range [" + std::to_string(quote.begin) + "," +
                    std::to_string(quote.end) + ") invalid for " +
                    std::to_string(tokens.size()) + " tokens");
  }
  const std::size_t first = quote.begin > before ? quote.begin - before : 0;
  const std::size_t last = std::min(tokens.size(), quote.end + after);
  const CharRange source{tokens[first].start, tokens[last - 1].end};
  if (source.end > doc.size()) {
    throw Error(ErrorKind::kBounds, "tokens extend beyond the document");
  }
  Passage passage;
  passage.source_range = source;
  passage.text = Utf8Encode(doc.substr(source.start, source.size()));
  passage.quote_range = {tokens[quote.begin].start - source.start,
                         tokens[quote.end - 1].end - source.start};
  return passage;
}

SentenceContext SentenceWindowContext(std::u32string_view doc,
                                      const CharRange &quote_span, Lang lang,
                                      std::size_t before, std::size_t after,
                                      bool short_clauses) {
  if (quote_span.start >= quote_span.end || quote_span.end > doc.size()) {
    throw Error(ErrorKind::kBounds,
                "quotation span [" + std::to_string(quote_span.start) + "," +
                    std::to_string(quote_span.end) +
                    ") invalid for document of length " +
                    std::to_string(doc.size()));
  }
  SentenceOptions options;
  options.short_clauses = short_clauses;
  options.atomic_span = quote_span;
  const std::vector<CharRange> units = SplitSentences(doc, lang, options);

  SentenceContext context;
  std::vector<CharRange> preceding;
  for (const CharRange &unit : units) {
    if (unit.end <= quote_span.start) {
      preceding.push_back(unit);
    } else if (unit.start >= quote_span.end &&
               context.after.size() < after) {
      context.after.push_back(unit);
    }
  }
  const std::size_t keep = std::min(before, preceding.size());
  context.before.assign(preceding.end() - static_cast<std::ptrdiff_t>(keep),
                        preceding.end());

  CharRange source = quote_span;
  if (!context.before.empty()) source.start = context.before.front().start;
  if (!context.after.empty()) source.end = context.after.back().end;
  context.passage.source_range = source;
  context.passage.text = Utf8Encode(doc.substr(source.start, source.size()));
  context.passage.quote_range = {quote_span.start - source.start,
                                 quote_span.end - source.start};
  return context;
}

Passage SentenceWindow(std::u32string_view doc, const CharRange &quote_span,
                       Lang lang, std::size_t before, std::size_t after,
                       bool short_clauses) {
  return SentenceWindowContext(doc, quote_span, lang, before, after,
                               short_clauses)
      .passage;
}

}  // namespace quoteattr
