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

// Addressee annotation guideline checks.

#ifndef QUOTEATTR_GUIDELINES_H_
#define QUOTEATTR_GUIDELINES_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quoteattr/corpus.h"
#include "quoteattr/segment.h"

namespace quoteattr {

enum class GuidelineRule {
  // Addressee character is not among the segment's candidates.
  kCandidateList,
  // The same character is annotated twice as addressee.
  kDuplicateAddressee,
  // Addressee span lies inside the quotation although the context offers
  // an addressee outside it.
  kInternalAddressee,
  // Dialogue (non-monologue) quotation without addressee.
  kMissingAddressee,
};

// "candidate-list", "duplicate-addressee", "internal-addressee",
// "missing-addressee".
std::string_view GuidelineRuleId(GuidelineRule rule);

struct Violation {
  std::string record_id;
  GuidelineRule rule;
  std::string message;

  friend bool operator==(const Violation &, const Violation &) = default;
};

// At most one violation per (record, rule), in corpus order then rule order.
// Segments are built with `window`, or the language default when empty.
std::vector<Violation> ValidateGuidelines(
    const Corpus &corpus, const std::optional<WindowSpec> &window = {});

// Checks a single prepared segment.
std::vector<Violation> ValidateSegment(const Segment &segment);

}  // namespace quoteattr

#endif  // QUOTEATTR_GUIDELINES_H_
