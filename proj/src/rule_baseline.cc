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

#include "quoteattr/rule_baseline.h"

#include <algorithm>
#include <limits>
#include <optional>
#include <set>

#include "quoteattr/error.h"
#include "quoteattr/jsonl.h"
#include "quoteattr/utf8.h"

namespace quoteattr {

RuleLexicon RuleLexicon::FromFile(const std::filesystem::path &path) {
  Json obj;
  try {
    obj = Json::parse(ReadFile(path));
  } catch (const Json::exception &e) {
    throw Error(ErrorKind::kConfig,
                "lexicon " + path.string() + ": " + e.what());
  }
  RuleLexicon lexicon;
  auto read = [&](const char *key, std::vector<std::string> *field) {
    if (!obj.contains(key)) return;
    try {
      *field = obj[key].get<std::vector<std::string>>();
    } catch (const Json::exception &e) {
      throw Error(ErrorKind::kConfig, "lexicon field " + std::string(key) +
                                          ": " + e.what());
    }
  };
  read("cue_verbs_zh", &lexicon.cue_verbs_zh);
  read("cue_verbs_en", &lexicon.cue_verbs_en);
  read("monologue_zh", &lexicon.monologue_zh);
  read("monologue_en", &lexicon.monologue_en);
  read("coordinators_zh", &lexicon.coordinators_zh);
  read("coordinators_en", &lexicon.coordinators_en);
  read("addressing_zh", &lexicon.addressing_zh);
  read("addressing_en", &lexicon.addressing_en);
  return lexicon;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Quote-mark pairs in `text`. ASCII single quotes and ‘’ only pair up in
// Chinese text, where they cannot be apostrophes.
std::vector<CharRange> FindQuotations(std::u32string_view text, Lang lang) {
  std::vector<CharRange> quotes;
  std::size_t i = 0;
  while (i < text.size()) {
    char32_t close = 0;
    switch (text[i]) {
      case U'“': close = U'”'; break;
      case U'「': close = U'」'; break;
      case U'『': close = U'』'; break;
      case U'"': close = U'"'; break;
      case U'‘': if (lang == Lang::kZh) close = U'’'; break;
      case U'\'': if (lang == Lang::kZh) close = U'\''; break;
      default: break;
    }
    if (close == 0) {
      ++i;
      continue;
    }
    const std::size_t end = text.find(close, i + 1);
    if (end == std::u32string_view::npos) {
      ++i;
      continue;
    }
    quotes.push_back({i, end + 1});
    i = end + 1;
  }
  return quotes;
}

std::vector<CharRange> FindWords(std::u32string_view text,
                                 const std::vector<std::string> &words,
                                 Lang lang) {
  std::vector<CharRange> found;
  const std::u32string folded = AsciiFold(text);
  for (const std::string &word : words) {
    const std::u32string needle = AsciiFold(Utf8Decode(word));
    if (needle.empty()) continue;
    for (std::size_t pos = folded.find(needle); pos != std::u32string::npos;
         pos = folded.find(needle, pos + 1)) {
      const std::size_t end = pos + needle.size();
      if (lang == Lang::kEn) {
        if (IsWordChar(needle.front()) && pos > 0 &&
            IsWordChar(folded[pos - 1])) {
          continue;
        }
        if (IsWordChar(needle.back()) && end < folded.size() &&
            IsWordChar(folded[end])) {
          continue;
        }
      }
      found.push_back({pos, end});
    }
  }
  std::sort(found.begin(), found.end(),
            [](const CharRange &a, const CharRange &b) {
              return a.start < b.start || (a.start == b.start && a.end < b.end);
            });
  return found;
}

std::size_t Gap(const CharRange &a, const CharRange &b) {
  if (a.end <= b.start) return b.start - a.end;
  if (b.end <= a.start) return a.start - b.end;
  return 0;
}

class Analysis {
 public:
  Analysis(const Segment &segment, const RuleLexicon &lexicon)
      : lang_(segment.lang),
        text_(Utf8Decode(segment.passage.text)),
        target_(segment.passage.quote_range) {
    mentions_ = FindCandidateMentions(text_, segment.candidates, lang_);

    for (const CharRange &quote : FindQuotations(text_, lang_)) {
      if (!quote.Overlaps(target_)) quotes_.push_back(quote);
    }
    quotes_.push_back(target_);
    std::sort(quotes_.begin(), quotes_.end(),
              [](const CharRange &a, const CharRange &b) {
                return a.start < b.start;
              });

    std::set<std::size_t> boundaries = {0, text_.size()};
    for (const CharRange &sentence : SplitSentences(text_, lang_)) {
      boundaries.insert(sentence.end);
    }
    for (const CharRange &quote : quotes_) {
      boundaries.insert(quote.start);
      boundaries.insert(quote.end);
    }
    boundaries_.assign(boundaries.begin(), boundaries.end());

    const bool zh = lang_ == Lang::kZh;
    for (const CharRange &cue :
         FindWords(text_, zh ? lexicon.cue_verbs_zh : lexicon.cue_verbs_en,
                   lang_)) {
      if (!InsideQuotation(cue) && !OverlapsMention(cue)) cues_.push_back(cue);
    }
    for (const CharRange &marker :
         FindWords(text_, zh ? lexicon.monologue_zh : lexicon.monologue_en,
                   lang_)) {
      if (!InsideQuotation(marker)) monologue_markers_.push_back(marker);
    }
    coordinators_ = zh ? lexicon.coordinators_zh : lexicon.coordinators_en;

    addressed_.assign(mentions_.size(), false);
    const auto &markers = zh ? lexicon.addressing_zh : lexicon.addressing_en;
    for (std::size_t m = 0; m < mentions_.size(); ++m) {
      if (!FollowsMarker(mentions_[m].range.start, markers)) continue;
      for (std::size_t g : Group(m)) addressed_[g] = true;
    }
  }

  const std::vector<CandidateMention> &mentions() const { return mentions_; }
  const CharRange &target() const { return target_; }
  const std::vector<CharRange> &quotes() const { return quotes_; }

  CharRange ClauseBefore(const CharRange &quote) const {
    auto it = std::lower_bound(boundaries_.begin(), boundaries_.end(),
                               quote.start);
    if (it == boundaries_.begin()) return {quote.start, quote.start};
    return {*std::prev(it), quote.start};
  }

  CharRange ClauseAfter(const CharRange &quote) const {
    auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(),
                               quote.end);
    if (it == boundaries_.end()) return {quote.end, quote.end};
    return {quote.end, *it};
  }

  bool addressed(std::size_t m) const { return addressed_[m]; }

  bool InsideQuotation(const CharRange &range) const {
    return std::any_of(quotes_.begin(), quotes_.end(),
                       [&](const CharRange &q) { return q.Contains(range); });
  }

  bool HasMonologueMarker(const CharRange &clause) const {
    return std::any_of(
        monologue_markers_.begin(), monologue_markers_.end(),
        [&](const CharRange &m) { return clause.Contains(m); });
  }

  // Mention closest to a cue verb inside `clause`.
  std::size_t CueAttributed(const CharRange &clause) const {
    std::size_t best = kNone;
    std::size_t best_gap = kNone;
    for (const CharRange &cue : cues_) {
      if (!clause.Contains(cue)) continue;
      for (std::size_t m = 0; m < mentions_.size(); ++m) {
        if (!clause.Overlaps(mentions_[m].range) || addressed_[m]) continue;
        const std::size_t gap = Gap(mentions_[m].range, cue);
        if (gap < best_gap ||
            (gap == best_gap &&
             mentions_[m].range.start < mentions_[best].range.start)) {
          best = m;
          best_gap = gap;
        }
      }
    }
    return best;
  }

  // Cue-attributed speaker of `quote`, preceding clause first.
  std::size_t AttributedSpeaker(const CharRange &quote) const {
    const std::size_t before = CueAttributed(ClauseBefore(quote));
    return before != kNone ? before : CueAttributed(ClauseAfter(quote));
  }

  // Nearest mention ending at or before `pos` satisfying `ok`.
  template <typename Pred>
  std::size_t NearestBefore(std::size_t pos, Pred ok) const {
    std::size_t best = kNone;
    for (std::size_t m = 0; m < mentions_.size(); ++m) {
      if (mentions_[m].range.end > pos || !ok(m)) continue;
      // Later end means smaller distance; equal ends keep the earlier start.
      if (best == kNone || mentions_[m].range.end > mentions_[best].range.end) {
        best = m;
      }
    }
    return best;
  }

  // Nearest mention starting at or after `pos` satisfying `ok`.
  template <typename Pred>
  std::size_t NearestAfter(std::size_t pos, Pred ok) const {
    for (std::size_t m = 0; m < mentions_.size(); ++m) {
      if (mentions_[m].range.start >= pos && ok(m)) return m;
    }
    return kNone;
  }

  // Mentions joined to `seed` by coordinators, including `seed`.
  std::vector<std::size_t> Group(std::size_t seed) const {
    std::vector<std::size_t> group = {seed};
    for (std::size_t m = seed; m + 1 < mentions_.size(); ++m) {
      if (!Coordinated(mentions_[m].range.end,
                       mentions_[m + 1].range.start)) {
        break;
      }
      group.push_back(m + 1);
    }
    for (std::size_t m = seed; m > 0; --m) {
      if (!Coordinated(mentions_[m - 1].range.end, mentions_[m].range.start)) {
        break;
      }
      group.push_back(m - 1);
    }
    std::sort(group.begin(), group.end());
    return group;
  }

 private:
  bool OverlapsMention(const CharRange &range) const {
    return std::any_of(
        mentions_.begin(), mentions_.end(),
        [&](const CandidateMention &m) { return m.range.Overlaps(range); });
  }

  // Does an addressing marker end right before `pos`?
  bool FollowsMarker(std::size_t pos,
                     const std::vector<std::string> &markers) const {
    std::size_t end = pos;
    if (lang_ == Lang::kEn) {
      while (end > 0 && IsWhitespace(text_[end - 1])) --end;
      if (end == pos) return false;
    }
    const std::u32string folded = AsciiFold(text_.substr(0, end));
    for (const std::string &marker : markers) {
      const std::u32string needle = AsciiFold(Utf8Decode(marker));
      if (needle.empty() || needle.size() > end) continue;
      const std::size_t start = end - needle.size();
      if (folded.compare(start, needle.size(), needle) != 0) continue;
      if (lang_ == Lang::kEn && start > 0 && IsWordChar(folded[start - 1])) {
        continue;
      }
      return true;
    }
    return false;
  }

  bool Coordinated(std::size_t from, std::size_t to) const {
    if (to < from) return false;
    std::u32string gap(text_.substr(from, to - from));
    std::size_t b = 0;
    std::size_t e = gap.size();
    while (b < e && IsWhitespace(gap[b])) ++b;
    while (e > b && IsWhitespace(gap[e - 1])) --e;
    const std::string trimmed = Utf8Encode(
        std::u32string_view(gap).substr(b, e - b));
    return std::find(coordinators_.begin(), coordinators_.end(), trimmed) !=
           coordinators_.end();
  }

  Lang lang_;
  std::u32string text_;
  CharRange target_;
  std::vector<CandidateMention> mentions_;
  std::vector<CharRange> quotes_;
  std::vector<std::size_t> boundaries_;
  std::vector<CharRange> cues_;
  std::vector<CharRange> monologue_markers_;
  std::vector<std::string> coordinators_;
  std::vector<bool> addressed_;
};

}  // namespace

Prediction RuleIdentify(const Segment &segment, const RuleLexicon &lexicon) {
  if (segment.candidates.empty()) {
    throw Error(ErrorKind::kNoCandidate,
                "segment " + segment.id() + " has no candidate characters");
  }
  const Analysis analysis(segment, lexicon);
  const auto &mentions = analysis.mentions();
  const CharRange &target = analysis.target();
  auto outside_target = [&](std::size_t m) {
    return !target.Overlaps(mentions[m].range);
  };

  // Speaker.
  std::size_t speaker = analysis.AttributedSpeaker(target);
  if (speaker == kNone) speaker = analysis.NearestBefore(target.start, outside_target);
  if (speaker == kNone) speaker = analysis.NearestAfter(target.end, outside_target);

  Prediction prediction;
  std::size_t speaker_candidate;
  if (speaker != kNone) {
    speaker_candidate = mentions[speaker].candidate;
    prediction.speaker = mentions[speaker].surface;
  } else {
    speaker_candidate = 0;
    prediction.speaker = segment.candidates.front().canonical_name;
  }

  // Addressee.
  const CharRange before = analysis.ClauseBefore(target);
  const CharRange after = analysis.ClauseAfter(target);
  if (analysis.HasMonologueMarker(before) ||
      analysis.HasMonologueMarker(after)) {
    return prediction;
  }
  auto other = [&](std::size_t m) {
    return mentions[m].candidate != speaker_candidate;
  };
  auto other_outside = [&](std::size_t m) {
    return other(m) && outside_target(m);
  };

  std::size_t addressee = kNone;
  for (const CharRange &clause : {before, after}) {
    for (std::size_t m = 0; m < mentions.size() && addressee == kNone; ++m) {
      if (analysis.addressed(m) && clause.Overlaps(mentions[m].range) &&
          other(m)) {
        addressee = m;
      }
    }
  }
  for (std::size_t m = 0; m < mentions.size() && addressee == kNone; ++m) {
    if (after.Overlaps(mentions[m].range) && other(m) &&
        !analysis.InsideQuotation(mentions[m].range)) {
      addressee = m;
    }
  }
  if (addressee == kNone) {
    const auto &quotes = analysis.quotes();
    auto it = std::find(quotes.begin(), quotes.end(), target);
    const std::size_t index = static_cast<std::size_t>(it - quotes.begin());
    if (index > 0) {
      const std::size_t m = analysis.AttributedSpeaker(quotes[index - 1]);
      if (m != kNone && other(m)) addressee = m;
    }
    if (addressee == kNone && index + 1 < quotes.size()) {
      const std::size_t m = analysis.AttributedSpeaker(quotes[index + 1]);
      if (m != kNone && other(m)) addressee = m;
    }
  }
  if (addressee == kNone) {
    addressee = analysis.NearestBefore(target.start, other_outside);
  }
  if (addressee == kNone) {
    addressee = analysis.NearestAfter(target.end, other_outside);
  }
  if (addressee == kNone) {
    for (std::size_t m = 0; m < mentions.size(); ++m) {
      if (target.Contains(mentions[m].range) && other(m)) {
        addressee = m;
        break;
      }
    }
  }
  if (addressee == kNone) return prediction;

  std::set<std::size_t> taken = {speaker_candidate};
  for (std::size_t m : analysis.Group(addressee)) {
    if (taken.insert(mentions[m].candidate).second) {
      prediction.addressees.push_back(mentions[m].surface);
    }
  }
  return prediction;
}

}  // namespace quoteattr
