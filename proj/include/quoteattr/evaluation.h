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

// Accuracy scoring, annotator agreement and case-level diffs.
//
// Predictions file, one object per line:
//   {"segment_id": "q1", "speaker": "黄蓉", "addressees": ["陆庄主"],
//    "backend": "rule", "mode": "zero"}

#ifndef QUOTEATTR_EVALUATION_H_
#define QUOTEATTR_EVALUATION_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quoteattr/corpus.h"
#include "quoteattr/jsonl.h"
#include "quoteattr/prompting.h"

namespace quoteattr {

// Trims whitespace, strips surrounding quote marks and folds ASCII case.
std::string NormalizeMention(std::string_view text);

// True when the normalized prediction equals a gold surface or an alias of
// a gold mention's character.
bool MatchMention(std::string_view predicted, std::span<const Mention> gold,
                  std::span<const CharacterEntity> roster);

struct PredictionRecord {
  std::string segment_id;
  std::string speaker;
  std::vector<std::string> addressees;
  std::string backend;
  std::string mode;

  friend bool operator==(const PredictionRecord &,
                         const PredictionRecord &) = default;
};

std::vector<PredictionRecord> ReadPredictions(const std::filesystem::path &path);
void WritePredictions(const std::filesystem::path &path,
                      std::span<const PredictionRecord> records);

enum class AddresseePolicy {
  // Predicted set meets the gold set and names nobody outside it.
  kOverlapNoExtra,
  // Predicted characters equal the gold characters.
  kExact,
};

// "overlap" or "exact". Throws kConfig.
AddresseePolicy ParseAddresseePolicy(std::string_view name);

// Judges one prediction against its gold record.
bool SpeakerCorrect(const PredictionRecord &prediction,
                    const QuotationRecord &gold,
                    std::span<const CharacterEntity> roster);
bool AddresseesCorrect(const PredictionRecord &prediction,
                       const QuotationRecord &gold,
                       std::span<const CharacterEntity> roster,
                       AddresseePolicy policy);

struct Accuracy {
  std::size_t n = 0;
  std::size_t speaker_correct = 0;
  std::size_t addressee_correct = 0;
  std::size_t both_correct = 0;

  double speaker_acc() const { return Rate(speaker_correct); }
  double addressee_acc() const { return Rate(addressee_correct); }
  double both_acc() const { return Rate(both_correct); }

 private:
  double Rate(std::size_t k) const {
    return n == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(n);
  }
};

struct EvalReport {
  Accuracy overall;
  std::map<std::string, Accuracy> per_novel;
};

// Accuracy over every gold record; a gold record without a prediction
// counts as wrong. Throws kInput for duplicate prediction ids or ids
// outside the gold set.
EvalReport Score(std::span<const PredictionRecord> predictions,
                 std::span<const QuotationRecord> golds,
                 std::span<const CharacterEntity> roster,
                 AddresseePolicy policy = AddresseePolicy::kOverlapNoExtra);

// The per-novel table of Score.
std::map<std::string, Accuracy> PerNovelReport(
    std::span<const PredictionRecord> predictions,
    std::span<const QuotationRecord> golds,
    std::span<const CharacterEntity> roster,
    AddresseePolicy policy = AddresseePolicy::kOverlapNoExtra);

// Percentages with two decimals.
std::string FormatPercent(double fraction);
// Fixed-layout text table: overall row, then one row per novel.
std::string FormatReport(const EvalReport &report);
Json ReportToJson(const EvalReport &report);

// Addressee character ids per segment.
using AddresseeAnnotation = std::map<std::string, std::set<std::string>>;

// Pairwise F1 over (segment, character) assertions with `reference` as the
// gold side. 1 when both are empty. Throws kInput when the segment sets
// differ.
double IaaF1(const AddresseeAnnotation &reference,
             const AddresseeAnnotation &other);

// Cohen's kappa over binary addressee judgments on every (segment,
// candidate) pair of `universe`. Throws kInput for an empty universe or an
// assertion outside it.
double CohensKappa(const AddresseeAnnotation &a, const AddresseeAnnotation &b,
                   const AddresseeAnnotation &universe);

struct IaaReport {
  double f1 = 0;
  double kappa = 0;
  std::size_t judgment_count = 0;
};

IaaReport ComputeIaa(const AddresseeAnnotation &a,
                     const AddresseeAnnotation &b,
                     const AddresseeAnnotation &universe);

// Annotation file, one object per line:
//   {"segment_id": "q1", "addressees": ["c1"], "candidates": ["c1", "c2"]}
// "candidates" is optional and feeds `universe` when given.
AddresseeAnnotation ReadAnnotation(const std::filesystem::path &path,
                                   AddresseeAnnotation *universe = nullptr);

struct DiffEntry {
  std::string backend;
  std::optional<PredictionRecord> prediction;  // empty when missing
  bool speaker_correct = false;
  bool addressee_correct = false;
};

struct DiffCase {
  std::string segment_id;
  std::string novel_id;
  std::string quotation;
  Prediction gold;
  std::vector<DiffEntry> entries;  // one per run, in run order
};

// One case per gold record, ordered by segment id. `runs` maps a run label
// to its predictions.
std::vector<DiffCase> DiffReport(
    const std::map<std::string, std::vector<PredictionRecord>> &runs,
    std::span<const QuotationRecord> golds,
    std::span<const CharacterEntity> roster,
    AddresseePolicy policy = AddresseePolicy::kOverlapNoExtra);

Json DiffCaseToJson(const DiffCase &diff);

}  // namespace quoteattr

#endif  // QUOTEATTR_EVALUATION_H_
