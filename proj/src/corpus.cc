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

#include "quoteattr/corpus.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include "quoteattr/error.h"
#include "quoteattr/utf8.h"

namespace quoteattr {

std::string_view LangName(Lang lang) {
  return lang == Lang::kZh ? "zh" : "en";
}

Lang ParseLang(std::string_view name) {
  if (name == "zh") return Lang::kZh;
  if (name == "en") return Lang::kEn;
  throw Error(ErrorKind::kConfig, "unknown language: " + std::string(name));
}

std::string_view StanceName(Stance stance) {
  switch (stance) {
    case Stance::kProtagonist: return "protagonist";
    case Stance::kVillain: return "villain";
    case Stance::kUnknown: return "unknown";
  }
  return "unknown";
}

Stance ParseStance(std::string_view name) {
  if (name == "protagonist") return Stance::kProtagonist;
  if (name == "villain") return Stance::kVillain;
  if (name == "unknown" || name.empty()) return Stance::kUnknown;
  throw Error(ErrorKind::kParse, "unknown stance: " + std::string(name));
}

const CharacterEntity *Corpus::FindCharacter(std::string_view id) const {
  for (const CharacterEntity &entity : roster) {
    if (entity.id == id) return &entity;
  }
  return nullptr;
}

const Novel *Corpus::FindNovel(std::string_view id) const {
  auto it = novels.find(std::string(id));
  return it == novels.end() ? nullptr : &it->second;
}

const Novel &Corpus::NovelOf(const QuotationRecord &record) const {
  const Novel *novel = FindNovel(record.novel_id);
  if (novel == nullptr) {
    throw Error(ErrorKind::kReference, "record " + record.id +
                                           ": unknown novel_id " +
                                           record.novel_id);
  }
  return *novel;
}

std::string SliceText(const Novel &novel, const CharRange &range) {
  if (range.start > range.end || range.end > novel.text.size()) {
    throw Error(ErrorKind::kBounds,
                "range [" + std::to_string(range.start) + "," +
                    std::to_string(range.end) + ") outside novel " + novel.id +
                    " of length " + std::to_string(novel.text.size()));
  }
  return Utf8Encode(std::u32string_view(novel.text).substr(range.start,
                                                           range.size()));
}

namespace {

void CheckSpan(const Novel &novel, const std::string &record_id,
               std::string_view what, const std::string &surface,
               const CharRange &range) {
  if (range.start >= range.end) {
    throw Error(ErrorKind::kIntegrity, "record " + record_id + ": empty " +
                                           std::string(what) + " span");
  }
  if (range.end > novel.text.size()) {
    throw Error(ErrorKind::kIntegrity,
                "record " + record_id + ": " + std::string(what) +
                    " span ends at " + std::to_string(range.end) +
                    " beyond novel length " +
                    std::to_string(novel.text.size()));
  }
  std::string slice = SliceText(novel, range);
  if (slice != surface) {
    throw Error(ErrorKind::kIntegrity,
                "record " + record_id + ": " + std::string(what) +
                    " surface \"" + surface + "\" != novel text \"" + slice +
                    "\"");
  }
}

void CheckCharacterRef(const Corpus &corpus, const std::string &record_id,
                       const Mention &mention) {
  if (mention.character_id &&
      corpus.FindCharacter(*mention.character_id) == nullptr) {
    throw Error(ErrorKind::kReference, "record " + record_id +
                                           ": dangling character_id " +
                                           *mention.character_id);
  }
}

}  // namespace

void CheckCorpus(const Corpus &corpus) {
  std::unordered_set<std::string> ids;
  for (const CharacterEntity &entity : corpus.roster) {
    if (!ids.insert(entity.id).second) {
      throw Error(ErrorKind::kIntegrity,
                  "duplicate roster id " + entity.id);
    }
    if (entity.canonical_name.empty()) {
      throw Error(ErrorKind::kIntegrity,
                  "roster entry " + entity.id + " has no canonical name");
    }
    if (!entity.aliases.contains(entity.canonical_name)) {
      throw Error(ErrorKind::kIntegrity, "roster entry " + entity.id +
                                             ": canonical name missing from "
                                             "aliases");
    }
  }
  for (const auto &[id, novel] : corpus.novels) {
    if (id != novel.id) {
      throw Error(ErrorKind::kIntegrity, "novel key " + id +
                                             " does not match id " + novel.id);
    }
  }

  std::unordered_set<std::string> record_ids;
  for (const QuotationRecord &record : corpus.quotations) {
    if (!record_ids.insert(record.id).second) {
      throw Error(ErrorKind::kIntegrity, "duplicate record id " + record.id);
    }
    const Novel &novel = corpus.NovelOf(record);
    CheckSpan(novel, record.id, "quote", record.quote.surface,
              record.quote.range);
    CheckSpan(novel, record.id, "speaker", record.speaker.surface,
              record.speaker.range);
    CheckCharacterRef(corpus, record.id, record.speaker);
    if (record.quote.range.Overlaps(record.speaker.range)) {
      throw Error(ErrorKind::kIntegrity,
                  "record " + record.id + ": speaker overlaps quotation");
    }
    for (const Mention &addressee : record.addressees) {
      CheckSpan(novel, record.id, "addressee", addressee.surface,
                addressee.range);
      CheckCharacterRef(corpus, record.id, addressee);
    }
    if (record.cue) {
      CheckSpan(novel, record.id, "cue", record.cue->surface,
                record.cue->range);
    }
    if (record.mode) {
      CheckSpan(novel, record.id, "mode", record.mode->surface,
                record.mode->range);
    }
    if (record.candidates) {
      for (const std::string &id : *record.candidates) {
        if (corpus.FindCharacter(id) == nullptr) {
          throw Error(ErrorKind::kReference, "record " + record.id +
                                                 ": dangling candidate " + id);
        }
      }
    }
  }
}

std::string_view ElementName(Element element) {
  switch (element) {
    case Element::kSpeaker: return "speaker";
    case Element::kAddressee: return "addressee";
    case Element::kCue: return "cue";
    case Element::kMode: return "mode";
  }
  return "";
}

const ElementCount &ElementStats::of(Element element) const {
  switch (element) {
    case Element::kSpeaker: return speaker;
    case Element::kAddressee: return addressee;
    case Element::kCue: return cue;
    case Element::kMode: return mode;
  }
  return speaker;
}

ElementStats ComputeElementStats(const Corpus &corpus) {
  if (corpus.quotations.empty()) {
    throw Error(ErrorKind::kInput, "element statistics need a non-empty corpus");
  }
  ElementStats stats;
  stats.total = corpus.quotations.size();
  for (const QuotationRecord &record : corpus.quotations) {
    if (!record.speaker.surface.empty()) ++stats.speaker.present;
    if (!record.addressees.empty()) ++stats.addressee.present;
    if (record.cue) ++stats.cue.present;
    if (record.mode) ++stats.mode.present;
  }
  const auto total = static_cast<double>(stats.total);
  for (ElementCount *count :
       {&stats.speaker, &stats.addressee, &stats.cue, &stats.mode}) {
    count->rate = static_cast<double>(count->present) / total;
  }
  return stats;
}

namespace {

// Uniform integer in [0, bound) from a 64-bit engine by rejection. Used
// instead of std::uniform_int_distribution, whose output is not specified
// across standard libraries.
std::uint64_t UniformBelow(std::mt19937_64 &rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

std::size_t PartSize(std::size_t n, double ratio) {
  // The epsilon keeps products such as 100 * 0.29 from flooring one short.
  return static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * ratio + 1e-9));
}

}  // namespace

CorpusSplit SplitCorpus(const Corpus &corpus, const SplitRatios &ratios,
                        std::uint64_t seed) {
  if (!(ratios.train > 0 && ratios.dev > 0 && ratios.test > 0)) {
    throw Error(ErrorKind::kConfig, "split ratios must all be positive");
  }
  if (std::abs(ratios.train + ratios.dev + ratios.test - 1.0) > 1e-9) {
    throw Error(ErrorKind::kConfig, "split ratios must sum to 1");
  }

  std::vector<const QuotationRecord *> order;
  order.reserve(corpus.quotations.size());
  for (const QuotationRecord &record : corpus.quotations) {
    order.push_back(&record);
  }
  std::sort(order.begin(), order.end(),
            [](const QuotationRecord *a, const QuotationRecord *b) {
              return a->id < b->id;
            });
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[UniformBelow(rng, i)]);
  }

  const std::size_t n = order.size();
  const std::size_t n_dev = PartSize(n, ratios.dev);
  const std::size_t n_test = PartSize(n, ratios.test);
  const std::size_t n_train = n - n_dev - n_test;

  CorpusSplit split;
  for (Corpus *part : {&split.train, &split.dev, &split.test}) {
    part->novels = corpus.novels;
    part->roster = corpus.roster;
  }
  for (std::size_t i = 0; i < n; ++i) {
    Corpus &part = i < n_train            ? split.train
                   : i < n_train + n_dev ? split.dev
                                         : split.test;
    part.quotations.push_back(*order[i]);
  }
  // Keep each part in id order so files are diff-friendly.
  for (Corpus *part : {&split.train, &split.dev, &split.test}) {
    std::sort(part->quotations.begin(), part->quotations.end(),
              [](const QuotationRecord &a, const QuotationRecord &b) {
                return a.id < b.id;
              });
  }
  return split;
}

}  // namespace quoteattr
