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

// Reading and writing corpora. A corpus on disk is three UTF-8 JSON Lines
// files, one object per line (blank lines are ignored):
//
//   novels.jsonl      {"novel_id", "title", "author", "lang"?, "text"}
//   roster.jsonl      {"id", "canonical_name", "aliases": [..], "stance"}
//   quotations.jsonl  {"id", "novel_id",
//                      "quote":      {"surface", "start", "end"},
//                      "speaker":    {"surface", "start", "end",
//                                     "character_id"?},
//                      "addressees": [{...same as speaker...}],
//                      "cue"?:       {"surface", "start", "end"},
//                      "mode"?:      {"surface", "start", "end"},
//                      "monologue"?: bool,
//                      "candidates"?: [character ids]}
//
// "lang" defaults to zh when the text contains CJK ideographs, else en.
// "stance" is one of protagonist, villain, unknown.
//
// Two import dialects map other layouts onto the same model; see
// Dialect::kRiquaImport and Dialect::kJyqImport.

#ifndef QUOTEATTR_CORPUS_IO_H_
#define QUOTEATTR_CORPUS_IO_H_

#include <filesystem>
#include <string_view>

#include "quoteattr/corpus.h"

namespace quoteattr {

enum class Dialect {
  kCanonical,
  // Standoff records, surfaces recovered from the novel text:
  //   {"quote_id", "text_id", "quote": [s, e],
  //    "speaker": {"span": [s, e], "entity": name} | null,
  //    "addressees": [{"span": [s, e], "entity": name}],
  //    "cue": [s, e] | null}
  kRiquaImport,
  // Records carrying surface strings and start offsets:
  //   {"id", "novel", "quotation": {"text", "offset"},
  //    "speaker": {"name", "offset", "entity"?},
  //    "addressees": [{"name", "offset", "entity"?}],
  //    "cue"?: {"text", "offset"}, "mode"?: {"text", "offset"},
  //    "candidates"?: [entity names]}
  kJyqImport,
};

std::string_view DialectName(Dialect dialect);
// Accepts canonical, riqua, jyq.
Dialect ParseDialect(std::string_view name);

struct CorpusFiles {
  std::filesystem::path novels;
  std::filesystem::path roster;
  std::filesystem::path quotations;

  static CorpusFiles InDirectory(const std::filesystem::path &dir);
};

struct ImportOptions {
  // Drop cue and mode spans (elements irrelevant to identification).
  bool drop_cue_and_mode = false;
  // Import dialects drop quotations without an addressee unless set.
  bool keep_addressee_absent = false;
};

// Loads and checks a corpus (see CheckCorpus). For the import dialects the
// roster file is optional: when absent, one entity per distinct entity name
// is synthesized. Entity names resolve against roster ids first, then
// aliases. Import records lacking a speaker are skipped.
//
// Errors: kIo for unreadable files, kParse naming the file, line and record
// id, kReference for dangling ids, kIntegrity for span/text mismatches.
Corpus LoadCorpus(const CorpusFiles &files, Dialect dialect,
                  const ImportOptions &options = {});

// Writes the canonical layout. Creates parent directories.
void SaveCanonical(const Corpus &corpus, const CorpusFiles &files);

}  // namespace quoteattr

#endif  // QUOTEATTR_CORPUS_IO_H_
