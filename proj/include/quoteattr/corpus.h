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

// Data model for annotated quotation corpora: novels, a character roster and
// quotation records carrying speaker/addressee/cue/mode spans.
//
// Offsets are code point indices into the novel text, half-open [start, end).
// A Corpus is treated as immutable once loaded; every operation here takes it
// by const reference.

#ifndef QUOTEATTR_CORPUS_H_
#define QUOTEATTR_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace quoteattr {

enum class Lang { kZh, kEn };

std::string_view LangName(Lang lang);
// Accepts "zh" / "en"; throws a kConfig Error otherwise.
Lang ParseLang(std::string_view name);

enum class Stance { kProtagonist, kVillain, kUnknown };

std::string_view StanceName(Stance stance);
Stance ParseStance(std::string_view name);

// Half-open range of code points.
struct CharRange {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - start; }
  bool empty() const { return end <= start; }
  bool Contains(const CharRange &other) const {
    return start <= other.start && other.end <= end;
  }
  bool Overlaps(const CharRange &other) const {
    return start < other.end && other.start < end;
  }
  friend bool operator==(const CharRange &, const CharRange &) = default;
};

struct CharacterEntity {
  std::string id;
  std::string canonical_name;
  // Always contains canonical_name.
  std::set<std::string> aliases;
  Stance stance = Stance::kUnknown;

  friend bool operator==(const CharacterEntity &,
                         const CharacterEntity &) = default;
};

// A span of novel text (quotation, cue or mode).
struct TextSpan {
  std::string surface;
  CharRange range;

  friend bool operator==(const TextSpan &, const TextSpan &) = default;
};

// A surface occurrence of a character.
struct Mention {
  std::string surface;
  CharRange range;
  std::optional<std::string> character_id;

  friend bool operator==(const Mention &, const Mention &) = default;
};

struct QuotationRecord {
  std::string id;
  std::string novel_id;
  TextSpan quote;
  Mention speaker;
  std::vector<Mention> addressees;
  std::optional<TextSpan> cue;
  std::optional<TextSpan> mode;
  // Internal monologue / self-talk: no addressee expected.
  bool monologue = false;
  // Explicit candidate character ids, when the source ships a candidate
  // list. Otherwise candidates are derived from the context window.
  std::optional<std::vector<std::string>> candidates;

  friend bool operator==(const QuotationRecord &,
                         const QuotationRecord &) = default;
};

struct Novel {
  std::string id;
  std::string title;
  std::string author;
  Lang lang = Lang::kZh;
  std::u32string text;

  friend bool operator==(const Novel &, const Novel &) = default;
};

struct Corpus {
  std::map<std::string, Novel> novels;
  std::vector<CharacterEntity> roster;
  std::vector<QuotationRecord> quotations;

  // nullptr when absent.
  const CharacterEntity *FindCharacter(std::string_view id) const;
  const Novel *FindNovel(std::string_view id) const;
  // Throws a kReference Error when the novel does not exist.
  const Novel &NovelOf(const QuotationRecord &record) const;

  friend bool operator==(const Corpus &, const Corpus &) = default;
};

// Checks every type invariant: unique roster ids, canonical name among the
// aliases, resolvable novel and character ids, spans within bounds and
// matching the novel text, quotation/speaker disjointness. Duplicate
// addressees are left to ValidateGuidelines, which reports them as data.
// Throws a kReference or kIntegrity Error on the first breach.
void CheckCorpus(const Corpus &corpus);

// The novel slice a range refers to, UTF-8 encoded. Throws a kBounds Error.
std::string SliceText(const Novel &novel, const CharRange &range);

enum class Element { kSpeaker, kAddressee, kCue, kMode };

std::string_view ElementName(Element element);

struct ElementCount {
  std::size_t present = 0;
  double rate = 0.0;
};

struct ElementStats {
  std::size_t total = 0;
  ElementCount speaker;
  ElementCount addressee;
  ElementCount cue;
  ElementCount mode;

  const ElementCount &of(Element element) const;
};

// Occurrence rate of each quotation element. Throws a kInput Error on an empty
// corpus.
ElementStats ComputeElementStats(const Corpus &corpus);

struct SplitRatios {
  double train = 0.8;
  double dev = 0.1;
  double test = 0.1;
};

struct CorpusSplit {
  Corpus train;
  Corpus dev;
  Corpus test;
};

// Deterministic shuffle-and-cut of the quotation ids. dev and test sizes are
// floor(n * ratio); the remainder goes to train. Novels and roster are shared
// by all three parts. Throws a kConfig Error unless all ratios are positive and
// sum to 1 within 1e-9.
CorpusSplit SplitCorpus(const Corpus &corpus, const SplitRatios &ratios,
                        std::uint64_t seed);

}  // namespace quoteattr

#endif  // QUOTEATTR_CORPUS_H_
