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

#include "quoteattr/segment.h"

#include <algorithm>
#include <charconv>
#include <map>

#include "quoteattr/error.h"
#include "quoteattr/utf8.h"

namespace quoteattr {

WindowSpec WindowSpec::DefaultFor(Lang lang) {
  return lang == Lang::kEn ? Tokens() : Sentences();
}

namespace {

std::size_t ParseCount(std::string_view text, std::string_view spec) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorKind::kConfig,
                "bad window spec \"" + std::string(spec) + "\"");
  }
  return value;
}

}  // namespace

WindowSpec WindowSpec::Parse(std::string_view text) {
  const std::size_t first = text.find(':');
  const std::size_t second =
      first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos) {
    throw Error(ErrorKind::kConfig, "bad window spec \"" + std::string(text) +
                                        "\"; expected token:B:A or sent:B:A");
  }
  const std::string_view kind = text.substr(0, first);
  WindowSpec spec;
  if (kind == "token" || kind == "tok") {
    spec.kind = Kind::kToken;
  } else if (kind == "sent" || kind == "sentence") {
    spec.kind = Kind::kSentence;
  } else {
    throw Error(ErrorKind::kConfig,
                "unknown window kind \"" + std::string(kind) + "\"");
  }
  spec.before = ParseCount(text.substr(first + 1, second - first - 1), text);
  spec.after = ParseCount(text.substr(second + 1), text);
  return spec;
}

std::string WindowSpec::ToString() const {
  return std::string(kind == Kind::kToken ? "token:" : "sent:") +
         std::to_string(before) + ":" + std::to_string(after);
}

std::string Segment::QuoteText() const { return quotation.quote.surface; }

std::vector<CandidateMention> FindCandidateMentions(
    std::u32string_view text, std::span<const CharacterEntity> candidates,
    Lang lang) {
  std::vector<CandidateMention> found;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    for (const std::string &alias : candidates[c].aliases) {
      const std::u32string needle = Utf8Decode(alias);
      if (needle.empty()) continue;
      for (std::size_t pos = text.find(needle); pos != std::u32string::npos;
           pos = text.find(needle, pos + 1)) {
        const std::size_t end = pos + needle.size();
        if (lang == Lang::kEn) {
          if (IsWordChar(needle.front()) && pos > 0 &&
              IsWordChar(text[pos - 1])) {
            continue;
          }
          if (IsWordChar(needle.back()) && end < text.size() &&
              IsWordChar(text[end])) {
            continue;
          }
        }
        found.push_back({c, alias, {pos, end}});
      }
    }
  }
  std::sort(found.begin(), found.end(),
            [](const CandidateMention &a, const CandidateMention &b) {
              if (a.range.start != b.range.start) {
                return a.range.start < b.range.start;
              }
              if (a.range.size() != b.range.size()) {
                return a.range.size() > b.range.size();
              }
              return a.candidate < b.candidate;
            });
  std::vector<CandidateMention> kept;
  std::size_t covered = 0;
  for (CandidateMention &mention : found) {
    if (!kept.empty() && mention.range.start < covered) continue;
    covered = mention.range.end;
    kept.push_back(std::move(mention));
  }
  return kept;
}

namespace {

std::vector<ContextSentence> SentencesIn(const Novel &novel,
                                         const CharRange &range) {
  std::vector<ContextSentence> out;
  if (range.empty()) return out;
  const std::u32string_view slice =
      std::u32string_view(novel.text).substr(range.start, range.size());
  for (const CharRange &local : SplitSentences(slice, novel.lang)) {
    ContextSentence sentence;
    sentence.range = {range.start + local.start, range.start + local.end};
    sentence.text = Utf8Encode(slice.substr(local.start, local.size()));
    out.push_back(std::move(sentence));
  }
  return out;
}

ContextSentence ToContextSentence(const Novel &novel, const CharRange &range) {
  return {SliceText(novel, range), range};
}

Segment BuildSegmentWithTokens(const Corpus &corpus,
                               const QuotationRecord &record,
                               const WindowSpec &window,
                               const std::vector<CharRange> *tokens) {
  const Novel &novel = corpus.NovelOf(record);
  Segment segment;
  segment.quotation = record;
  segment.lang = novel.lang;

  if (window.kind == WindowSpec::Kind::kSentence) {
    SentenceContext context =
        SentenceWindowContext(novel.text, record.quote.range, novel.lang,
                              window.before, window.after);
    segment.passage = std::move(context.passage);
    for (const CharRange &range : context.before) {
      segment.pre_context.push_back(ToContextSentence(novel, range));
    }
    for (const CharRange &range : context.after) {
      segment.post_context.push_back(ToContextSentence(novel, range));
    }
  } else {
    std::vector<CharRange> local;
    if (tokens == nullptr) {
      local = Tokenize(novel.text, novel.lang);
      tokens = &local;
    }
    const TokenRange quote_tokens = TokensCovering(*tokens, record.quote.range);
    segment.passage = TokenWindow(novel.text, *tokens, quote_tokens,
                                  window.before, window.after);
    const CharRange &source = segment.passage.source_range;
    const CharRange quote{source.start + segment.passage.quote_range.start,
                          source.start + segment.passage.quote_range.end};
    segment.pre_context = SentencesIn(novel, {source.start, quote.start});
    segment.post_context = SentencesIn(novel, {quote.end, source.end});
  }

  if (record.candidates) {
    for (const std::string &id : *record.candidates) {
      const CharacterEntity *entity = corpus.FindCharacter(id);
      if (entity == nullptr) {
        throw Error(ErrorKind::kReference,
                    "record " + record.id + ": dangling candidate " + id);
      }
      segment.candidates.push_back(*entity);
    }
  } else {
    const std::u32string_view passage_text =
        std::u32string_view(novel.text)
            .substr(segment.passage.source_range.start,
                    segment.passage.source_range.size());
    std::vector<bool> taken(corpus.roster.size(), false);
    for (const CandidateMention &mention :
         FindCandidateMentions(passage_text, corpus.roster, novel.lang)) {
      if (!taken[mention.candidate]) {
        taken[mention.candidate] = true;
        segment.candidates.push_back(corpus.roster[mention.candidate]);
      }
    }
  }
  return segment;
}

}  // namespace

Segment BuildSegment(const Corpus &corpus, const QuotationRecord &record,
                     const WindowSpec &window) {
  return BuildSegmentWithTokens(corpus, record, window, nullptr);
}

std::vector<Segment> BuildSegments(const Corpus &corpus,
                                   const std::optional<WindowSpec> &window) {
  std::map<std::string, std::vector<CharRange>> token_cache;
  std::vector<Segment> segments;
  segments.reserve(corpus.quotations.size());
  for (const QuotationRecord &record : corpus.quotations) {
    const Novel &novel = corpus.NovelOf(record);
    const WindowSpec spec = window ? *window : WindowSpec::DefaultFor(novel.lang);
    const std::vector<CharRange> *tokens = nullptr;
    if (spec.kind == WindowSpec::Kind::kToken) {
      auto it = token_cache.find(novel.id);
      if (it == token_cache.end()) {
        it = token_cache.emplace(novel.id, Tokenize(novel.text, novel.lang))
                 .first;
      }
      tokens = &it->second;
    }
    segments.push_back(BuildSegmentWithTokens(corpus, record, spec, tokens));
  }
  return segments;
}

}  // namespace quoteattr
