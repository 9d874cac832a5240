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

// In-memory corpus builders shared by the tests.

#ifndef QUOTEATTR_TESTS_FIXTURES_H_
#define QUOTEATTR_TESTS_FIXTURES_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "quoteattr/corpus.h"
#include "quoteattr/evaluation.h"
#include "quoteattr/segment.h"

namespace quoteattr::testing {

// Directory holding checked-in fixture files.
std::filesystem::path DataDir();

// Fresh empty directory under the system temp dir.
std::filesystem::path TempDir(const std::string &name);

// Code-point offset of the `nth` occurrence of `needle` in `text`. Aborts
// the test program when absent.
std::size_t Find(const std::u32string &text, const std::string &needle,
                 std::size_t nth = 0);

struct MentionSpec {
  std::string surface;
  std::optional<std::string> id;
  std::size_t nth = 0;  // occurrence in the novel text
};

class CorpusBuilder {
 public:
  CorpusBuilder &AddNovel(const std::string &id, Lang lang,
                          const std::string &text);
  CorpusBuilder &AddCharacter(const std::string &id, const std::string &name,
                              std::set<std::string> aliases = {},
                              Stance stance = Stance::kUnknown);
  // Spans are located by surface occurrence in the novel text.
  CorpusBuilder &AddQuote(const std::string &id, const std::string &novel,
                          const std::string &quote, std::size_t quote_nth,
                          const MentionSpec &speaker,
                          const std::vector<MentionSpec> &addressees,
                          bool monologue = false);

  const Corpus &corpus() const { return corpus_; }
  Corpus Build() const { return corpus_; }

 private:
  Corpus corpus_;
};

// One-novel corpus around `text` with a single quotation, turned into a
// segment whose passage is the whole text. Candidates are every character.
Segment PassageSegment(Lang lang, const std::string &text,
                       const std::string &quote, std::size_t quote_nth,
                       const std::vector<CharacterEntity> &characters);

// Random single-novel zh corpus. Quotation i reads
//   <speaker>[对<a1>、<a2>...][笑]道：“第i句。”
// where 笑 is the mode span. Characters are named 人<k>号; quotations
// without addressees are marked as monologue.
struct RandomCorpusOptions {
  std::size_t characters = 12;
  std::size_t quotations = 100;
  std::size_t max_addressees = 3;
  double cue_probability = 0.9;
  double mode_probability = 0.5;
};
Corpus RandomCorpus(std::uint64_t seed, const RandomCorpusOptions &options);

// Predictions over RandomCorpus(seed, {12, n, 2, 1, 0}) that copy the gold
// surfaces except at the listed indices, where the speaker (or the
// addressee set) names some other character.
struct ScoringFixture {
  Corpus corpus;
  std::vector<PredictionRecord> predictions;
};
ScoringFixture MakeScoringFixture(std::uint64_t seed, std::size_t n,
                                  const std::set<std::size_t> &wrong_speaker,
                                  const std::set<std::size_t> &wrong_addressee);

CharacterEntity Character(const std::string &id, const std::string &name,
                          std::set<std::string> aliases = {},
                          Stance stance = Stance::kUnknown);

}  // namespace quoteattr::testing

#endif  // QUOTEATTR_TESTS_FIXTURES_H_
