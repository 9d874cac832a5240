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

// Deterministic speaker/addressee baseline that operationalizes the addressee
// annotation guidelines.
//
// The passage is cut into attribution clauses at sentence boundaries and at
// the edges of every quotation (quote-mark pairs plus the target quotation).
// The clause ending at the quotation start is its preceding clause; the one
// starting at its end is its following clause. Only candidate mentions are
// ever returned.
//
// A mention directly after an addressing marker (对 向 朝 / "to"), together
// with the mentions coordinated with it, is addressed rather than speaking.
//
// Speaker, first match wins:
//   1. the non-addressed candidate mention closest to a cue verb in the
//      preceding clause;
//   2. the same in the following clause;
//   3. the nearest candidate mention before the quotation;
//   4. the nearest candidate mention after it;
//   5. the first candidate.
// Addressee, skipping the speaker's character:
//   0. none when an attribution clause carries a monologue marker;
//   1. the addressed mentions of the preceding, then the following clause;
//   2. the first candidate mention in the following clause (next turn or
//      vocative position);
//   3. the cue-attributed speaker of the nearest preceding, then following,
//      quotation (alternating two-party dialogue);
//   4. the nearest candidate mention before the quotation, else after it;
//   5. a mention inside the quotation itself;
//   6. none.
// Distances are counted in code points between mention edges; ties go to
// the earlier offset. A chosen addressee is extended with candidate mentions
// joined to it by a coordinator (、 和 与 及 / "," "and"), covering group
// dialogue.

#ifndef QUOTEATTR_RULE_BASELINE_H_
#define QUOTEATTR_RULE_BASELINE_H_

#include <filesystem>
#include <string>
#include <vector>

#include "quoteattr/prompting.h"
#include "quoteattr/segment.h"

namespace quoteattr {

struct RuleLexicon {
  std::vector<std::string> cue_verbs_zh = {"道", "说", "问", "叫", "喝"};
  std::vector<std::string> cue_verbs_en = {"said", "asked", "cried",
                                           "replied"};
  std::vector<std::string> monologue_zh = {"心想", "心道", "暗想", "暗道",
                                           "寻思", "自言自语"};
  std::vector<std::string> monologue_en = {"thought", "to himself",
                                           "to herself", "to themselves"};
  std::vector<std::string> coordinators_zh = {"、", "和", "与", "及"};
  std::vector<std::string> coordinators_en = {",", "and", ", and"};
  std::vector<std::string> addressing_zh = {"对", "向", "朝"};
  std::vector<std::string> addressing_en = {"to"};

  // JSON object with any of the list fields above; absent fields keep
  // their defaults.
  static RuleLexicon FromFile(const std::filesystem::path &path);
};

// Throws kNoCandidate when the segment has no candidates.
Prediction RuleIdentify(const Segment &segment,
                        const RuleLexicon &lexicon = {});

}  // namespace quoteattr

#endif  // QUOTEATTR_RULE_BASELINE_H_
