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

#include "quoteattr/evaluation.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "quoteattr/error.h"
#include "quoteattr/utf8.h"

namespace quoteattr {

namespace {

bool IsQuoteMark(char32_t c) {
  switch (c) {
    case U'"': case U'\'': case U'“': case U'”': case U'‘': case U'’':
    case U'「': case U'」': case U'『': case U'』': case U'`':
      return true;
    default:
      return false;
  }
}

const CharacterEntity *FindEntity(std::span<const CharacterEntity> roster,
                                  const std::string &id) {
  for (const CharacterEntity &entity : roster) {
    if (entity.id == id) return &entity;
  }
  return nullptr;
}

bool MatchOne(const std::string &normalized, const Mention &gold,
              std::span<const CharacterEntity> roster) {
  if (normalized.empty()) return false;
  if (normalized == NormalizeMention(gold.surface)) return true;
  if (!gold.character_id) return false;
  const CharacterEntity *entity = FindEntity(roster, *gold.character_id);
  if (entity == nullptr) return false;
  return std::any_of(entity->aliases.begin(), entity->aliases.end(),
                     [&](const std::string &alias) {
                       return NormalizeMention(alias) == normalized;
                     });
}

std::string CharacterKey(const Mention &mention) {
  return mention.character_id ? *mention.character_id : "@" + mention.surface;
}

}  // namespace

std::string NormalizeMention(std::string_view text) {
  const std::u32string decoded = Utf8Decode(text);
  std::size_t b = 0;
  std::size_t e = decoded.size();
  auto strip = [](char32_t c) { return IsWhitespace(c) || IsQuoteMark(c); };
  while (b < e && strip(decoded[b])) ++b;
  while (e > b && strip(decoded[e - 1])) --e;
  return Utf8Encode(AsciiFold(std::u32string_view(decoded).substr(b, e - b)));
}

bool MatchMention(std::string_view predicted, std::span<const Mention> gold,
                  std::span<const CharacterEntity> roster) {
  const std::string normalized = NormalizeMention(predicted);
  return std::any_of(gold.begin(), gold.end(), [&](const Mention &m) {
    return MatchOne(normalized, m, roster);
  });
}

std::vector<PredictionRecord> ReadPredictions(
    const std::filesystem::path &path) {
  std::vector<PredictionRecord> records;
  ReadJsonLines(path, [&](const Json &row, std::size_t) {
    PredictionRecord record;
    record.segment_id = row.at("segment_id").get<std::string>();
    record.speaker = row.value("speaker", std::string());
    if (row.contains("addressees")) {
      record.addressees = row.at("addressees").get<std::vector<std::string>>();
    }
    record.backend = row.value("backend", std::string());
    record.mode = row.value("mode", std::string());
    records.push_back(std::move(record));
  });
  return records;
}

void WritePredictions(const std::filesystem::path &path,
                      std::span<const PredictionRecord> records) {
  std::vector<Json> rows;
  for (const PredictionRecord &r : records) {
    rows.push_back({{"segment_id", r.segment_id},
                    {"speaker", r.speaker},
                    {"addressees", r.addressees},
                    {"backend", r.backend},
                    {"mode", r.mode}});
  }
  WriteJsonLines(path, rows);
}

AddresseePolicy ParseAddresseePolicy(std::string_view name) {
  if (name == "overlap") return AddresseePolicy::kOverlapNoExtra;
  if (name == "exact") return AddresseePolicy::kExact;
  throw Error(ErrorKind::kConfig, "bad addressee policy '" +
                                      std::string(name) +
                                      "' (expected overlap or exact)");
}

bool SpeakerCorrect(const PredictionRecord &prediction,
                    const QuotationRecord &gold,
                    std::span<const CharacterEntity> roster) {
  const Mention speaker[] = {gold.speaker};
  return MatchMention(prediction.speaker, speaker, roster);
}

bool AddresseesCorrect(const PredictionRecord &prediction,
                       const QuotationRecord &gold,
                       std::span<const CharacterEntity> roster,
                       AddresseePolicy policy) {
  std::vector<std::string> predicted;
  for (const std::string &p : prediction.addressees) {
    const std::string normalized = NormalizeMention(p);
    if (!normalized.empty()) predicted.push_back(normalized);
  }
  if (gold.addressees.empty()) return predicted.empty();
  if (predicted.empty()) return false;

  std::set<std::string> covered;
  for (const std::string &p : predicted) {
    bool matched = false;
    for (const Mention &g : gold.addressees) {
      if (MatchOne(p, g, roster)) {
        covered.insert(CharacterKey(g));
        matched = true;
      }
    }
    if (!matched) return false;
  }
  if (policy == AddresseePolicy::kOverlapNoExtra) return true;
  for (const Mention &g : gold.addressees) {
    if (!covered.contains(CharacterKey(g))) return false;
  }
  return true;
}

EvalReport Score(std::span<const PredictionRecord> predictions,
                 std::span<const QuotationRecord> golds,
                 std::span<const CharacterEntity> roster,
                 AddresseePolicy policy) {
  std::map<std::string, const QuotationRecord *> gold_by_id;
  for (const QuotationRecord &gold : golds) gold_by_id[gold.id] = &gold;
  std::map<std::string, const PredictionRecord *> by_id;
  for (const PredictionRecord &p : predictions) {
    if (!gold_by_id.contains(p.segment_id)) {
      throw Error(ErrorKind::kInput,
                  "prediction for unknown segment " + p.segment_id);
    }
    if (!by_id.emplace(p.segment_id, &p).second) {
      throw Error(ErrorKind::kInput,
                  "duplicate prediction for segment " + p.segment_id);
    }
  }

  EvalReport report;
  for (const QuotationRecord &gold : golds) {
    Accuracy &novel = report.per_novel[gold.novel_id];
    ++report.overall.n;
    ++novel.n;
    auto it = by_id.find(gold.id);
    if (it == by_id.end()) continue;
    const bool speaker = SpeakerCorrect(*it->second, gold, roster);
    const bool addressee =
        AddresseesCorrect(*it->second, gold, roster, policy);
    for (Accuracy *acc : {&report.overall, &novel}) {
      acc->speaker_correct += speaker;
      acc->addressee_correct += addressee;
      acc->both_correct += speaker && addressee;
    }
  }
  return report;
}

std::map<std::string, Accuracy> PerNovelReport(
    std::span<const PredictionRecord> predictions,
    std::span<const QuotationRecord> golds,
    std::span<const CharacterEntity> roster, AddresseePolicy policy) {
  return Score(predictions, golds, roster, policy).per_novel;
}

std::string FormatPercent(double fraction) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", fraction * 100.0);
  return buffer;
}

std::string FormatReport(const EvalReport &report) {
  std::ostringstream out;
  char line[512];
  std::snprintf(line, sizeof line, "%-24s %6s %9s %9s %9s\n", "scope", "n",
                "speaker", "addressee", "both");
  out << line;
  auto row = [&](const std::string &scope, const Accuracy &acc) {
    std::snprintf(line, sizeof line, "%-24s %6zu %9s %9s %9s\n",
                  scope.c_str(), acc.n, FormatPercent(acc.speaker_acc()).c_str(),
                  FormatPercent(acc.addressee_acc()).c_str(),
                  FormatPercent(acc.both_acc()).c_str());
    out << line;
  };
  row("overall", report.overall);
  for (const auto &[novel, acc] : report.per_novel) row(novel, acc);
  return out.str();
}

namespace {

Json AccuracyToJson(const Accuracy &acc) {
  return {{"n", acc.n},
          {"speaker_correct", acc.speaker_correct},
          {"addressee_correct", acc.addressee_correct},
          {"both_correct", acc.both_correct},
          {"speaker_acc", acc.speaker_acc()},
          {"addressee_acc", acc.addressee_acc()},
          {"both_acc", acc.both_acc()}};
}

}  // namespace

Json ReportToJson(const EvalReport &report) {
  Json per_novel = Json::object();
  for (const auto &[novel, acc] : report.per_novel) {
    per_novel[novel] = AccuracyToJson(acc);
  }
  return {{"overall", AccuracyToJson(report.overall)},
          {"per_novel", per_novel}};
}

double IaaF1(const AddresseeAnnotation &reference,
             const AddresseeAnnotation &other) {
  std::set<std::string> ref_ids;
  std::set<std::string> other_ids;
  for (const auto &entry : reference) ref_ids.insert(entry.first);
  for (const auto &entry : other) other_ids.insert(entry.first);
  if (ref_ids != other_ids) {
    throw Error(ErrorKind::kInput,
                "annotators cover different segment sets");
  }
  std::size_t ref_total = 0;
  std::size_t other_total = 0;
  std::size_t agreed = 0;
  for (const auto &[segment, ref_chars] : reference) {
    const std::set<std::string> &other_chars = other.at(segment);
    ref_total += ref_chars.size();
    other_total += other_chars.size();
    for (const std::string &c : other_chars) agreed += ref_chars.contains(c);
  }
  if (ref_total == 0 && other_total == 0) return 1.0;
  if (agreed == 0) return 0.0;
  const double precision = static_cast<double>(agreed) / other_total;
  const double recall = static_cast<double>(agreed) / ref_total;
  return 2 * precision * recall / (precision + recall);
}

namespace {

std::size_t CountJudgments(const AddresseeAnnotation &universe) {
  std::size_t n = 0;
  for (const auto &entry : universe) n += entry.second.size();
  return n;
}

void CheckInUniverse(const AddresseeAnnotation &annotation,
                     const AddresseeAnnotation &universe, const char *who) {
  for (const auto &[segment, chars] : annotation) {
    auto it = universe.find(segment);
    for (const std::string &c : chars) {
      if (it == universe.end() || !it->second.contains(c)) {
        throw Error(ErrorKind::kInput, std::string("annotator ") + who +
                                           " asserts (" + segment + ", " + c +
                                           ") outside the judgment universe");
      }
    }
  }
}

bool Asserts(const AddresseeAnnotation &annotation, const std::string &segment,
             const std::string &character) {
  auto it = annotation.find(segment);
  return it != annotation.end() && it->second.contains(character);
}

}  // namespace

double CohensKappa(const AddresseeAnnotation &a, const AddresseeAnnotation &b,
                   const AddresseeAnnotation &universe) {
  const std::size_t n = CountJudgments(universe);
  if (n == 0) throw Error(ErrorKind::kInput, "empty judgment universe");
  CheckInUniverse(a, universe, "A");
  CheckInUniverse(b, universe, "B");
  std::size_t a_yes = 0;
  std::size_t b_yes = 0;
  std::size_t agree = 0;
  for (const auto &[segment, chars] : universe) {
    for (const std::string &c : chars) {
      const bool ya = Asserts(a, segment, c);
      const bool yb = Asserts(b, segment, c);
      a_yes += ya;
      b_yes += yb;
      agree += ya == yb;
    }
  }
  const double total = static_cast<double>(n);
  const double p_o = agree / total;
  const double pa = a_yes / total;
  const double pb = b_yes / total;
  const double p_e = pa * pb + (1 - pa) * (1 - pb);
  if (p_e >= 1.0) return 1.0;
  return (p_o - p_e) / (1 - p_e);
}

IaaReport ComputeIaa(const AddresseeAnnotation &a,
                     const AddresseeAnnotation &b,
                     const AddresseeAnnotation &universe) {
  return {IaaF1(a, b), CohensKappa(a, b, universe), CountJudgments(universe)};
}

AddresseeAnnotation ReadAnnotation(const std::filesystem::path &path,
                                   AddresseeAnnotation *universe) {
  AddresseeAnnotation annotation;
  ReadJsonLines(path, [&](const Json &row, std::size_t) {
    const std::string id = row.at("segment_id").get<std::string>();
    auto &chars = annotation[id];
    for (const std::string &c :
         row.value("addressees", std::vector<std::string>())) {
      chars.insert(c);
      if (universe != nullptr) (*universe)[id].insert(c);
    }
    if (universe != nullptr) {
      auto &pool = (*universe)[id];
      for (const std::string &c :
           row.value("candidates", std::vector<std::string>())) {
        pool.insert(c);
      }
    }
  });
  return annotation;
}

std::vector<DiffCase> DiffReport(
    const std::map<std::string, std::vector<PredictionRecord>> &runs,
    std::span<const QuotationRecord> golds,
    std::span<const CharacterEntity> roster, AddresseePolicy policy) {
  std::map<std::string, std::map<std::string, const PredictionRecord *>> index;
  for (const auto &[label, predictions] : runs) {
    for (const PredictionRecord &p : predictions) {
      index[label][p.segment_id] = &p;
    }
  }
  std::vector<const QuotationRecord *> ordered;
  for (const QuotationRecord &gold : golds) ordered.push_back(&gold);
  std::sort(ordered.begin(), ordered.end(),
            [](const QuotationRecord *x, const QuotationRecord *y) {
              return x->id < y->id;
            });

  std::vector<DiffCase> cases;
  for (const QuotationRecord *gold : ordered) {
    DiffCase diff;
    diff.segment_id = gold->id;
    diff.novel_id = gold->novel_id;
    diff.quotation = gold->quote.surface;
    diff.gold.speaker = gold->speaker.surface;
    for (const Mention &m : gold->addressees) {
      diff.gold.addressees.push_back(m.surface);
    }
    for (const auto &[label, predictions] : runs) {
      DiffEntry entry;
      entry.backend = label;
      auto &by_id = index[label];
      auto it = by_id.find(gold->id);
      if (it != by_id.end()) {
        entry.prediction = *it->second;
        entry.speaker_correct = SpeakerCorrect(*it->second, *gold, roster);
        entry.addressee_correct =
            AddresseesCorrect(*it->second, *gold, roster, policy);
      }
      diff.entries.push_back(std::move(entry));
    }
    cases.push_back(std::move(diff));
  }
  return cases;
}

Json DiffCaseToJson(const DiffCase &diff) {
  Json entries = Json::array();
  for (const DiffEntry &entry : diff.entries) {
    Json row = {{"backend", entry.backend},
                {"missing", !entry.prediction.has_value()}};
    if (entry.prediction) {
      row["speaker"] = entry.prediction->speaker;
      row["addressees"] = entry.prediction->addressees;
    }
    row["speaker_correct"] = entry.speaker_correct;
    row["addressee_correct"] = entry.addressee_correct;
    row["both_correct"] = entry.speaker_correct && entry.addressee_correct;
    entries.push_back(std::move(row));
  }
  return {{"segment_id", diff.segment_id},
          {"novel_id", diff.novel_id},
          {"quotation", diff.quotation},
          {"gold", {{"speaker", diff.gold.speaker},
                    {"addressees", diff.gold.addressees}}},
          {"predictions", entries}};
}

}  // namespace quoteattr
