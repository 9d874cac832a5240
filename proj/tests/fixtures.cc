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

#include "fixtures.h"

#include <cstdio>
#include <cstdlib>
#include <random>

#include "quoteattr/utf8.h"

namespace quoteattr::testing {

std::filesystem::path DataDir() { return QUOTEATTR_TEST_DATA; }

std::filesystem::path TempDir(const std::string &name) {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / ("quoteattr-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::size_t Find(const std::u32string &text, const std::string &needle,
                 std::size_t nth) {
  const std::u32string n = Utf8Decode(needle);
  std::size_t pos = text.find(n);
  for (std::size_t i = 0; i < nth && pos != std::u32string::npos; ++i) {
    pos = text.find(n, pos + 1);
  }
  if (pos == std::u32string::npos) {
    std::fprintf(stderr, "fixture: '%s' occurrence %zu not found\n",
                 needle.c_str(), nth);
    std::abort();
  }
  return pos;
}

CharacterEntity Character(const std::string &id, const std::string &name,
                          std::set<std::string> aliases, Stance stance) {
  aliases.insert(name);
  return {id, name, std::move(aliases), stance};
}

CorpusBuilder &CorpusBuilder::AddNovel(const std::string &id, Lang lang,
                                       const std::string &text) {
  corpus_.novels[id] = Novel{id, id, "", lang, Utf8Decode(text)};
  return *this;
}

CorpusBuilder &CorpusBuilder::AddCharacter(const std::string &id,
                                           const std::string &name,
                                           std::set<std::string> aliases,
                                           Stance stance) {
  corpus_.roster.push_back(Character(id, name, std::move(aliases), stance));
  return *this;
}

CorpusBuilder &CorpusBuilder::AddQuote(
    const std::string &id, const std::string &novel, const std::string &quote,
    std::size_t quote_nth, const MentionSpec &speaker,
    const std::vector<MentionSpec> &addressees, bool monologue) {
  const std::u32string &text = corpus_.novels.at(novel).text;
  auto span = [&](const std::string &surface, std::size_t nth) {
    const std::size_t start = Find(text, surface, nth);
    return CharRange{start, start + Utf8Decode(surface).size()};
  };
  QuotationRecord record;
  record.id = id;
  record.novel_id = novel;
  record.quote = {quote, span(quote, quote_nth)};
  record.speaker = {speaker.surface, span(speaker.surface, speaker.nth),
                    speaker.id};
  for (const MentionSpec &a : addressees) {
    record.addressees.push_back({a.surface, span(a.surface, a.nth), a.id});
  }
  record.monologue = monologue;
  corpus_.quotations.push_back(std::move(record));
  return *this;
}

Segment PassageSegment(Lang lang, const std::string &text,
                       const std::string &quote, std::size_t quote_nth,
                       const std::vector<CharacterEntity> &characters) {
  const std::u32string decoded = Utf8Decode(text);
  const std::size_t start = Find(decoded, quote, quote_nth);
  const CharRange range{start, start + Utf8Decode(quote).size()};
  Segment segment;
  segment.quotation.id = "p1";
  segment.quotation.novel_id = "n1";
  segment.quotation.quote = {quote, range};
  segment.lang = lang;
  segment.passage = {text, range, {0, decoded.size()}};
  segment.candidates = characters;
  return segment;
}

Corpus RandomCorpus(std::uint64_t seed, const RandomCorpusOptions &options) {
  std::mt19937_64 rng(seed);
  auto below = [&](std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
  };
  auto chance = [&](double p) {
    return std::uniform_real_distribution<double>(0, 1)(rng) < p;
  };

  Corpus corpus;
  for (std::size_t k = 0; k < options.characters; ++k) {
    const std::string name = "人" + std::to_string(k) + "号";
    char id[16];
    std::snprintf(id, sizeof id, "c%03zu", k);
    corpus.roster.push_back(Character(id, name, {}, static_cast<Stance>(k % 3)));
  }

  std::u32string text;
  auto append = [&](const std::string &piece) {
    const std::size_t start = text.size();
    text += Utf8Decode(piece);
    return CharRange{start, text.size()};
  };
  for (std::size_t i = 0; i < options.quotations; ++i) {
    QuotationRecord record;
    char id[16];
    std::snprintf(id, sizeof id, "q%05zu", i);
    record.id = id;
    record.novel_id = "n1";
    const CharacterEntity &speaker = corpus.roster[below(options.characters)];
    record.speaker = {speaker.canonical_name,
                      append(speaker.canonical_name), speaker.id};
    const std::size_t count = below(options.max_addressees + 1);
    std::set<std::string> used = {speaker.id};
    for (std::size_t a = 0; a < count && used.size() < options.characters;
         ++a) {
      const CharacterEntity *pick;
      do {
        pick = &corpus.roster[below(options.characters)];
      } while (used.contains(pick->id));
      used.insert(pick->id);
      append(a == 0 ? "对" : "、");
      record.addressees.push_back(
          {pick->canonical_name, append(pick->canonical_name), pick->id});
    }
    if (chance(options.mode_probability)) {
      const CharRange mode = append("笑");
      record.mode = TextSpan{"笑", mode};
    }
    const CharRange cue = append("道");
    if (chance(options.cue_probability)) record.cue = TextSpan{"道", cue};
    append("：");
    const std::string quote = "“第" + std::to_string(i) + "句。”";
    record.quote = {quote, append(quote)};
    record.monologue = record.addressees.empty();
    corpus.quotations.push_back(std::move(record));
  }
  corpus.novels["n1"] = Novel{"n1", "random", "", Lang::kZh, text};
  return corpus;
}

ScoringFixture MakeScoringFixture(std::uint64_t seed, std::size_t n,
                                  const std::set<std::size_t> &wrong_speaker,
                                  const std::set<std::size_t> &wrong_addressee) {
  ScoringFixture fixture;
  fixture.corpus = RandomCorpus(seed, {12, n, 2, 1.0, 0.0});
  const auto &roster = fixture.corpus.roster;
  for (std::size_t i = 0; i < n; ++i) {
    const QuotationRecord &gold = fixture.corpus.quotations[i];
    std::set<std::string> taken = {*gold.speaker.character_id};
    PredictionRecord p{gold.id, gold.speaker.surface, {}, "fixture", "zero"};
    for (const Mention &m : gold.addressees) {
      p.addressees.push_back(m.surface);
      taken.insert(*m.character_id);
    }
    const CharacterEntity *other = nullptr;
    for (const CharacterEntity &c : roster) {
      if (!taken.contains(c.id)) {
        other = &c;
        break;
      }
    }
    if (wrong_speaker.contains(i)) p.speaker = other->canonical_name;
    if (wrong_addressee.contains(i)) p.addressees = {other->canonical_name};
    fixture.predictions.push_back(std::move(p));
  }
  return fixture;
}

}  // namespace quoteattr::testing
