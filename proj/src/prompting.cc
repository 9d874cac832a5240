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

#include "quoteattr/prompting.h"

#include <algorithm>
#include <optional>
#include <set>

#include "quoteattr/error.h"
#include "quoteattr/jsonl.h"
#include "quoteattr/utf8.h"

namespace quoteattr {

PromptTemplate PromptTemplate::Default(Lang lang) {
  PromptTemplate tmpl;
  tmpl.lang = lang;
  if (lang == Lang::kEn) {
    tmpl.preamble = "Read the passage.";
    tmpl.question_pattern =
        "Passage: {context}\nWho speaks the quotation {quotation}, and to "
        "whom?";
    tmpl.answer_format_instruction = "Answer as Speaker: ...; Addressee: ...";
    tmpl.exemplar_pattern =
        "Passage: {context}\nWho speaks the quotation {quotation}, and to "
        "whom?\nSpeaker: \"{speaker}\", Addressee: \"{addressee}\"";
  } else {
    tmpl.preamble = "阅读下面的文章。";
    tmpl.question_pattern = "文章：{context}\n引文{quotation}是谁对谁说的？";
    tmpl.answer_format_instruction = "请按“说话人：...；听话人：...”的格式回答。";
    tmpl.exemplar_pattern =
        "文章：{context}\n引文{quotation}是谁对谁说的？\n"
        "说话人：“{speaker}”，听话人：“{addressee}”";
  }
  return tmpl;
}

PromptTemplate PromptTemplate::FromFile(const std::filesystem::path &path) {
  Json obj;
  try {
    obj = Json::parse(ReadFile(path));
  } catch (const Json::exception &e) {
    throw Error(ErrorKind::kTemplate,
                "template " + path.string() + ": " + e.what());
  }
  if (!obj.is_object()) {
    throw Error(ErrorKind::kTemplate,
                "template " + path.string() + " is not a JSON object");
  }
  const Lang lang =
      obj.contains("lang") ? ParseLang(obj["lang"].get<std::string>())
                           : Lang::kEn;
  PromptTemplate tmpl = Default(lang);
  auto read = [&](const char *key, std::string *field) {
    if (!obj.contains(key)) return;
    if (!obj[key].is_string()) {
      throw Error(ErrorKind::kTemplate,
                  "template field " + std::string(key) + " must be a string");
    }
    *field = obj[key].get<std::string>();
  };
  read("preamble", &tmpl.preamble);
  read("question_pattern", &tmpl.question_pattern);
  read("answer_format_instruction", &tmpl.answer_format_instruction);
  read("exemplar_pattern", &tmpl.exemplar_pattern);
  tmpl.Validate();
  return tmpl;
}

namespace {

// Placeholder names referenced by `pattern`, in order of appearance.
std::vector<std::string> Placeholders(std::string_view pattern) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] == '{') {
      if (i + 1 < pattern.size() && pattern[i + 1] == '{') {
        ++i;
        continue;
      }
      const std::size_t close = pattern.find('}', i + 1);
      if (close == std::string_view::npos) {
        throw Error(ErrorKind::kTemplate,
                    "unterminated placeholder in \"" + std::string(pattern) +
                        "\"");
      }
      names.emplace_back(pattern.substr(i + 1, close - i - 1));
      i = close;
    } else if (pattern[i] == '}' && i + 1 < pattern.size() &&
               pattern[i + 1] == '}') {
      ++i;
    }
  }
  return names;
}

void RequirePlaceholders(std::string_view what, std::string_view pattern,
                         const std::set<std::string> &allowed,
                         const std::set<std::string> &required) {
  const std::vector<std::string> names = Placeholders(pattern);
  for (const std::string &name : names) {
    if (!allowed.contains(name)) {
      throw Error(ErrorKind::kTemplate, std::string(what) +
                                            " references unknown placeholder {" +
                                            name + "}");
    }
  }
  for (const std::string &name : required) {
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw Error(ErrorKind::kTemplate, std::string(what) +
                                            " is missing placeholder {" +
                                            name + "}");
    }
  }
}

}  // namespace

void PromptTemplate::Validate() const {
  RequirePlaceholders("question_pattern", question_pattern,
                      {"context", "quotation"}, {"context", "quotation"});
  RequirePlaceholders("exemplar_pattern", exemplar_pattern,
                      {"context", "quotation", "speaker", "addressee"},
                      {"speaker", "addressee"});
}

std::string FillPattern(std::string_view pattern,
                        const std::map<std::string, std::string> &values) {
  std::string out;
  out.reserve(pattern.size());
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const char c = pattern[i];
    if (c == '{') {
      if (i + 1 < pattern.size() && pattern[i + 1] == '{') {
        out += '{';
        ++i;
        continue;
      }
      const std::size_t close = pattern.find('}', i + 1);
      if (close == std::string_view::npos) {
        throw Error(ErrorKind::kTemplate, "unterminated placeholder");
      }
      const std::string name(pattern.substr(i + 1, close - i - 1));
      auto it = values.find(name);
      if (it == values.end()) {
        throw Error(ErrorKind::kTemplate,
                    "no value for placeholder {" + name + "}");
      }
      out += it->second;
      i = close;
    } else if (c == '}' && i + 1 < pattern.size() && pattern[i + 1] == '}') {
      out += '}';
      ++i;
    } else {
      out += c;
    }
  }
  return out;
}

std::string_view AddresseeDelimiter(Lang lang) {
  return lang == Lang::kZh ? "、" : ", ";
}

std::string JoinAddressees(std::span<const std::string> addressees, Lang lang) {
  std::string out;
  for (std::size_t i = 0; i < addressees.size(); ++i) {
    if (i > 0) out += AddresseeDelimiter(lang);
    out += addressees[i];
  }
  return out;
}

namespace {

std::string Assemble(const PromptTemplate &tmpl,
                     const std::vector<std::string> &blocks) {
  std::string out;
  if (!tmpl.preamble.empty()) {
    out += tmpl.preamble;
    out += "\n\n";
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i > 0) out += "\n\n";
    out += blocks[i];
  }
  if (!tmpl.answer_format_instruction.empty()) {
    out += '\n';
    out += tmpl.answer_format_instruction;
  }
  return out;
}

std::string Question(const PromptTemplate &tmpl, const Passage &passage,
                     std::string_view quotation_text) {
  return FillPattern(tmpl.question_pattern,
                     {{"context", passage.text},
                      {"quotation", std::string(quotation_text)}});
}

}  // namespace

std::string RenderZeroShot(const PromptTemplate &tmpl, const Passage &passage,
                           std::string_view quotation_text) {
  tmpl.Validate();
  return Assemble(tmpl, {Question(tmpl, passage, quotation_text)});
}

std::string RenderFewShot(const PromptTemplate &tmpl,
                          std::span<const Exemplar> exemplars,
                          const Passage &passage,
                          std::string_view quotation_text) {
  if (exemplars.empty()) {
    throw Error(ErrorKind::kConfig, "few-shot prompting needs an exemplar");
  }
  tmpl.Validate();
  std::vector<std::string> blocks;
  for (const Exemplar &exemplar : exemplars) {
    blocks.push_back(FillPattern(
        tmpl.exemplar_pattern,
        {{"context", exemplar.context},
         {"quotation", exemplar.quotation},
         {"speaker", exemplar.speaker},
         {"addressee", JoinAddressees(exemplar.addressees, tmpl.lang)}}));
  }
  blocks.push_back(Question(tmpl, passage, quotation_text));
  return Assemble(tmpl, blocks);
}

std::string FormatAnswer(const Prediction &prediction, Lang lang) {
  const std::string addressees = JoinAddressees(prediction.addressees, lang);
  if (lang == Lang::kZh) {
    return "说话人：“" + prediction.speaker + "”，听话人：“" + addressees +
           "”";
  }
  return "Speaker: \"" + prediction.speaker + "\", Addressee: \"" +
         addressees + "\"";
}

namespace {

enum class Field { kSpeaker, kAddressee };

struct Label {
  std::u32string text;  // lowercase
  Field field;
  bool latin;
};

const std::vector<Label> &Labels() {
  static const std::vector<Label> kLabels = {
      {U"speaker", Field::kSpeaker, true},
      {U"addressees", Field::kAddressee, true},
      {U"addressee", Field::kAddressee, true},
      {U"说话人", Field::kSpeaker, false},
      {U"听话人", Field::kAddressee, false},
  };
  return kLabels;
}

struct LabelHit {
  std::size_t start;        // label start
  std::size_t value_start;  // after the colon
  Field field;
};

std::vector<LabelHit> FindLabels(const std::u32string &folded) {
  std::vector<LabelHit> hits;
  std::vector<bool> claimed(folded.size(), false);
  for (const Label &label : Labels()) {
    for (std::size_t pos = folded.find(label.text);
         pos != std::u32string::npos; pos = folded.find(label.text, pos + 1)) {
      if (claimed[pos]) continue;
      if (label.latin && pos > 0 && IsWordChar(folded[pos - 1])) continue;
      std::size_t i = pos + label.text.size();
      if (label.latin && i < folded.size() && IsWordChar(folded[i])) continue;
      while (i < folded.size() && IsWhitespace(folded[i])) ++i;
      if (i >= folded.size() || (folded[i] != U':' && folded[i] != U'：')) {
        continue;
      }
      for (std::size_t k = pos; k < pos + label.text.size(); ++k) {
        claimed[k] = true;
      }
      hits.push_back({pos, i + 1, label.field});
    }
  }
  std::sort(hits.begin(), hits.end(),
            [](const LabelHit &a, const LabelHit &b) {
              return a.start < b.start;
            });
  return hits;
}

bool IsQuoteMark(char32_t c) {
  switch (c) {
    case U'"': case U'\'': case U'`': case U'“': case U'”': case U'‘':
    case U'’': case U'「': case U'」': case U'『': case U'』':
      return true;
    default:
      return false;
  }
}

bool IsStrippable(char32_t c) {
  if (IsWhitespace(c) || IsQuoteMark(c)) return true;
  switch (c) {
    case U'.': case U',': case U';': case U':': case U'!': case U'?':
    case U'。': case U'，': case U'；': case U'：': case U'！': case U'？':
    case U'、':
      return true;
    default:
      return false;
  }
}

std::u32string Strip(std::u32string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && IsStrippable(text[begin])) ++begin;
  while (end > begin && IsStrippable(text[end - 1])) --end;
  return std::u32string(text.substr(begin, end - begin));
}

// Contents of quoted substrings, or nothing when `text` holds no complete
// quote pair.
std::optional<std::vector<std::u32string>> QuotedPieces(
    std::u32string_view text) {
  std::vector<std::u32string> pieces;
  std::size_t i = 0;
  while (i < text.size()) {
    const char32_t open = text[i];
    char32_t close;
    switch (open) {
      case U'"': close = U'"'; break;
      case U'“': close = U'”'; break;
      case U'「': close = U'」'; break;
      case U'『': close = U'』'; break;
      case U'‘': close = U'’'; break;
      default: ++i; continue;
    }
    const std::size_t end = text.find(close, i + 1);
    if (end == std::u32string_view::npos) break;
    pieces.emplace_back(text.substr(i + 1, end - i - 1));
    i = end + 1;
  }
  if (pieces.empty()) return std::nullopt;
  return pieces;
}

std::vector<std::u32string> SplitAddressees(std::u32string_view text,
                                            Lang lang) {
  std::vector<std::u32string> parts;
  std::u32string current;
  auto flush = [&]() {
    std::u32string piece = Strip(current);
    if (!piece.empty()) parts.push_back(std::move(piece));
    current.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char32_t c = text[i];
    if (c == U'、' || c == U',' || (lang == Lang::kZh && c == U'，')) {
      flush();
      continue;
    }
    if (lang == Lang::kZh && c == U'和' && !Strip(current).empty() &&
        i + 1 < text.size() && !Strip(text.substr(i + 1)).empty()) {
      flush();
      continue;
    }
    if (lang == Lang::kEn && (c == U'a' || c == U'A') &&
        i + 3 <= text.size() && AsciiFold(text.substr(i, 3)) == U"and" &&
        i > 0 && IsWhitespace(text[i - 1]) &&
        (i + 3 == text.size() || IsWhitespace(text[i + 3]))) {
      flush();
      i += 2;
      continue;
    }
    current += c;
  }
  flush();
  return parts;
}

}  // namespace

Prediction ParsePrediction(std::string_view response, Lang lang) {
  const std::u32string text = Utf8Decode(response);
  const std::u32string folded = AsciiFold(text);
  const std::vector<LabelHit> hits = FindLabels(folded);

  auto value_of = [&](Field field) -> std::optional<std::u32string_view> {
    for (std::size_t k = 0; k < hits.size(); ++k) {
      if (hits[k].field != field) continue;
      std::size_t end = k + 1 < hits.size() ? hits[k + 1].start : text.size();
      for (std::size_t i = hits[k].value_start; i < end; ++i) {
        const char32_t c = text[i];
        if (c == U'\n' || c == U';' || c == U'；') {
          end = i;
          break;
        }
      }
      return std::u32string_view(text).substr(hits[k].value_start,
                                              end - hits[k].value_start);
    }
    return std::nullopt;
  };

  const auto speaker_value = value_of(Field::kSpeaker);
  const auto addressee_value = value_of(Field::kAddressee);
  if (!speaker_value && !addressee_value) {
    throw ParseError("no speaker or addressee field in response",
                     std::string(response));
  }

  Prediction prediction;
  prediction.raw_response = std::string(response);
  if (speaker_value) {
    const auto quoted = QuotedPieces(*speaker_value);
    prediction.speaker = Utf8Encode(quoted ? Strip(quoted->front())
                                           : Strip(*speaker_value));
  }
  if (addressee_value) {
    std::vector<std::u32string> names;
    if (const auto quoted = QuotedPieces(*addressee_value)) {
      for (const std::u32string &piece : *quoted) {
        for (std::u32string &name : SplitAddressees(piece, lang)) {
          names.push_back(std::move(name));
        }
      }
    } else {
      names = SplitAddressees(*addressee_value, lang);
    }
    std::set<std::u32string> seen;
    for (std::u32string &name : names) {
      if (seen.insert(name).second) {
        prediction.addressees.push_back(Utf8Encode(name));
      }
    }
  }
  return prediction;
}

}  // namespace quoteattr
