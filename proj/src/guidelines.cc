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

#include "quoteattr/guidelines.h"

#include <set>

#include "quoteattr/utf8.h"

namespace quoteattr {

std::string_view GuidelineRuleId(GuidelineRule rule) {
  switch (rule) {
    case GuidelineRule::kCandidateList: return "candidate-list";
    case GuidelineRule::kDuplicateAddressee: return "duplicate-addressee";
    case GuidelineRule::kInternalAddressee: return "internal-addressee";
    case GuidelineRule::kMissingAddressee: return "missing-addressee";
  }
  return "";
}

namespace {

// Character key of a mention: its id, or its surface when unresolved.
std::string CharacterKey(const Mention &mention) {
  return mention.character_id ? *mention.character_id : "@" + mention.surface;
}

bool IsCandidate(const Segment &segment, const Mention &mention) {
  for (const CharacterEntity &candidate : segment.candidates) {
    if (mention.character_id) {
      if (candidate.id == *mention.character_id) return true;
    } else if (candidate.aliases.contains(mention.surface)) {
      return true;
    }
  }
  return false;
}

// Does the character of `mention` also occur in the passage outside the
// quotation?
bool MentionedOutsideQuote(const Segment &segment, const Mention &mention) {
  if (!mention.character_id) return false;
  const CharacterEntity *entity = nullptr;
  for (const CharacterEntity &candidate : segment.candidates) {
    if (candidate.id == *mention.character_id) entity = &candidate;
  }
  if (entity == nullptr) return false;
  const std::u32string text = Utf8Decode(segment.passage.text);
  const CharacterEntity one[] = {*entity};
  for (const CandidateMention &found :
       FindCandidateMentions(text, one, segment.lang)) {
    if (!segment.passage.quote_range.Overlaps(found.range)) return true;
  }
  return false;
}

}  // namespace

std::vector<Violation> ValidateSegment(const Segment &segment) {
  std::vector<Violation> violations;
  const QuotationRecord &record = segment.quotation;
  auto add = [&](GuidelineRule rule, std::string message) {
    violations.push_back({record.id, rule, std::move(message)});
  };

  std::string absent;
  for (const Mention &addressee : record.addressees) {
    if (!IsCandidate(segment, addressee)) {
      if (!absent.empty()) absent += ", ";
      absent += addressee.surface;
    }
  }
  if (!absent.empty()) {
    add(GuidelineRule::kCandidateList,
        "addressee not in candidate list: " + absent);
  }

  std::set<std::string> seen;
  std::string duplicated;
  for (const Mention &addressee : record.addressees) {
    if (!seen.insert(CharacterKey(addressee)).second) {
      if (!duplicated.empty()) duplicated += ", ";
      duplicated += addressee.surface;
    }
  }
  if (!duplicated.empty()) {
    add(GuidelineRule::kDuplicateAddressee,
        "character annotated more than once: " + duplicated);
  }

  bool any_outside = false;
  for (const Mention &addressee : record.addressees) {
    if (!record.quote.range.Contains(addressee.range)) any_outside = true;
  }
  std::string internal;
  for (const Mention &addressee : record.addressees) {
    if (!record.quote.range.Contains(addressee.range)) continue;
    if (any_outside || MentionedOutsideQuote(segment, addressee)) {
      if (!internal.empty()) internal += ", ";
      internal += addressee.surface;
    }
  }
  if (!internal.empty()) {
    add(GuidelineRule::kInternalAddressee,
        "quotation-internal addressee while context offers one: " + internal);
  }

  if (record.addressees.empty() && !record.monologue) {
    add(GuidelineRule::kMissingAddressee,
        "dialogue quotation without addressee");
  }
  return violations;
}

std::vector<Violation> ValidateGuidelines(
    const Corpus &corpus, const std::optional<WindowSpec> &window) {
  std::vector<Violation> violations;
  for (const Segment &segment : BuildSegments(corpus, window)) {
    for (Violation &violation : ValidateSegment(segment)) {
      violations.push_back(std::move(violation));
    }
  }
  return violations;
}

}  // namespace quoteattr
