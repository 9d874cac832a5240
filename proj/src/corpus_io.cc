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

#include "quoteattr/corpus_io.h"

#include <algorithm>
#include <map>

#include "quoteattr/error.h"
#include "quoteattr/jsonl.h"
#include "quoteattr/utf8.h"

namespace quoteattr {

namespace fs = std::filesystem;

std::string_view DialectName(Dialect dialect) {
  switch (dialect) {
    case Dialect::kCanonical: return "canonical";
    case Dialect::kRiquaImport: return "riqua";
    case Dialect::kJyqImport: return "jyq";
  }
  return "";
}

Dialect ParseDialect(std::string_view name) {
  if (name == "canonical") return Dialect::kCanonical;
  if (name == "riqua" || name == "riqua_import") return Dialect::kRiquaImport;
  if (name == "jyq" || name == "jyq_import") return Dialect::kJyqImport;
  throw Error(ErrorKind::kConfig, "unknown dialect: " + std::string(name));
}

CorpusFiles CorpusFiles::InDirectory(const fs::path &dir) {
  return {dir / "novels.jsonl", dir / "roster.jsonl", dir / "quotations.jsonl"};
}

namespace {

std::string OptString(const Json &row, const char *key) {
  if (!row.contains(key) || row[key].is_null()) return {};
  return row[key].get<std::string>();
}

bool HasCjk(std::u32string_view text) {
  return std::any_of(text.begin(), text.end(), IsCjk);
}

std::map<std::string, Novel> ReadNovels(const fs::path &path) {
  std::map<std::string, Novel> novels;
  ReadJsonLines(path, [&](const Json &row, std::size_t line) {
    Novel novel;
    novel.id = row.at("novel_id").get<std::string>();
    novel.title = OptString(row, "title");
    novel.author = OptString(row, "author");
    novel.text = Utf8Decode(row.at("text").get<std::string>());
    const std::string lang = OptString(row, "lang");
    novel.lang = lang.empty() ? (HasCjk(novel.text) ? Lang::kZh : Lang::kEn)
                              : ParseLang(lang);
    if (novels.contains(novel.id)) {
      throw Error(ErrorKind::kIntegrity, path.filename().string() + ":" +
                                             std::to_string(line) +
                                             ": duplicate novel_id " +
                                             novel.id);
    }
    novels.emplace(novel.id, std::move(novel));
  });
  return novels;
}

std::vector<CharacterEntity> ReadRoster(const fs::path &path) {
  std::vector<CharacterEntity> roster;
  ReadJsonLines(path, [&](const Json &row, std::size_t) {
    CharacterEntity entity;
    entity.id = row.at("id").get<std::string>();
    entity.canonical_name = row.at("canonical_name").get<std::string>();
    if (row.contains("aliases")) {
      for (const Json &alias : row["aliases"]) {
        entity.aliases.insert(alias.get<std::string>());
      }
    }
    if (!entity.canonical_name.empty()) {
      entity.aliases.insert(entity.canonical_name);
    }
    entity.stance = ParseStance(OptString(row, "stance"));
    roster.push_back(std::move(entity));
  });
  return roster;
}

TextSpan ReadSpan(const Json &obj) {
  TextSpan span;
  span.surface = obj.at("surface").get<std::string>();
  span.range.start = obj.at("start").get<std::size_t>();
  span.range.end = obj.at("end").get<std::size_t>();
  return span;
}

Mention ReadMention(const Json &obj) {
  Mention mention;
  mention.surface = obj.at("surface").get<std::string>();
  mention.range.start = obj.at("start").get<std::size_t>();
  mention.range.end = obj.at("end").get<std::size_t>();
  if (obj.contains("character_id") && !obj["character_id"].is_null()) {
    mention.character_id = obj["character_id"].get<std::string>();
  }
  return mention;
}

std::vector<QuotationRecord> ReadCanonicalQuotations(const fs::path &path) {
  std::vector<QuotationRecord> records;
  ReadJsonLines(path, [&](const Json &row, std::size_t) {
    QuotationRecord record;
    record.id = row.at("id").get<std::string>();
    record.novel_id = row.at("novel_id").get<std::string>();
    record.quote = ReadSpan(row.at("quote"));
    record.speaker = ReadMention(row.at("speaker"));
    if (row.contains("addressees")) {
      for (const Json &addressee : row["addressees"]) {
        record.addressees.push_back(ReadMention(addressee));
      }
    }
    if (row.contains("cue") && !row["cue"].is_null()) {
      record.cue = ReadSpan(row["cue"]);
    }
    if (row.contains("mode") && !row["mode"].is_null()) {
      record.mode = ReadSpan(row["mode"]);
    }
    if (row.contains("monologue")) {
      record.monologue = row["monologue"].get<bool>();
    }
    if (row.contains("candidates") && !row["candidates"].is_null()) {
      record.candidates = row["candidates"].get<std::vector<std::string>>();
    }
    records.push_back(std::move(record));
  });
  return records;
}

// Maps entity names from import files onto roster ids.
class EntityResolver {
 public:
  EntityResolver(std::vector<CharacterEntity> *roster, bool synthesize)
      : roster_(roster), synthesize_(synthesize) {}

  std::string Resolve(const std::string &name, const std::string &record_id) {
    for (const CharacterEntity &entity : *roster_) {
      if (entity.id == name) return entity.id;
    }
    for (const CharacterEntity &entity : *roster_) {
      if (entity.aliases.contains(name)) return entity.id;
    }
    if (!synthesize_) {
      throw Error(ErrorKind::kReference, "record " + record_id +
                                             ": entity " + name +
                                             " not in roster");
    }
    CharacterEntity entity;
    entity.id = name;
    entity.canonical_name = name;
    entity.aliases.insert(name);
    roster_->push_back(entity);
    return name;
  }

 private:
  std::vector<CharacterEntity> *roster_;
  bool synthesize_;
};

const Novel &ImportNovel(const std::map<std::string, Novel> &novels,
                         const std::string &id, const std::string &record_id) {
  auto it = novels.find(id);
  if (it == novels.end()) {
    throw Error(ErrorKind::kReference,
                "record " + record_id + ": unknown novel " + id);
  }
  return it->second;
}

// Out-of-bounds import spans are integrity errors, like mismatched surfaces.
std::string ImportSlice(const Novel &novel, const CharRange &range,
                        const std::string &record_id) {
  if (range.start >= range.end || range.end > novel.text.size()) {
    throw Error(ErrorKind::kIntegrity,
                "record " + record_id + ": span [" +
                    std::to_string(range.start) + "," +
                    std::to_string(range.end) + ") outside novel " + novel.id);
  }
  return SliceText(novel, range);
}

CharRange ReadPair(const Json &pair) {
  if (!pair.is_array() || pair.size() != 2) {
    throw Error(ErrorKind::kParse, "span must be a [start, end] pair");
  }
  return {pair[0].get<std::size_t>(), pair[1].get<std::size_t>()};
}

std::vector<QuotationRecord> ReadRiquaQuotations(
    const fs::path &path, const std::map<std::string, Novel> &novels,
    EntityResolver &resolver, const ImportOptions &options) {
  std::vector<QuotationRecord> records;
  ReadJsonLines(path, [&](const Json &row, std::size_t) {
    QuotationRecord record;
    record.id = row.at("quote_id").get<std::string>();
    record.novel_id = row.at("text_id").get<std::string>();
    const Novel &novel = ImportNovel(novels, record.novel_id, record.id);
    record.quote.range = ReadPair(row.at("quote"));
    record.quote.surface = ImportSlice(novel, record.quote.range, record.id);

    auto read_mention = [&](const Json &obj) {
      Mention mention;
      mention.range = ReadPair(obj.at("span"));
      mention.surface = ImportSlice(novel, mention.range, record.id);
      if (obj.contains("entity") && !obj["entity"].is_null()) {
        mention.character_id =
            resolver.Resolve(obj["entity"].get<std::string>(), record.id);
      }
      return mention;
    };
    if (!row.contains("speaker") || row["speaker"].is_null()) return;
    record.speaker = read_mention(row["speaker"]);
    if (row.contains("addressees")) {
      for (const Json &obj : row["addressees"]) {
        record.addressees.push_back(read_mention(obj));
      }
    }
    if (record.addressees.empty() && !options.keep_addressee_absent) return;
    if (row.contains("cue") && !row["cue"].is_null()) {
      TextSpan cue;
      cue.range = ReadPair(row["cue"]);
      cue.surface = ImportSlice(novel, cue.range, record.id);
      record.cue = cue;
    }
    records.push_back(std::move(record));
  });
  return records;
}

std::vector<QuotationRecord> ReadJyqQuotations(const fs::path &path,
                                               EntityResolver &resolver,
                                               const ImportOptions &options) {
  std::vector<QuotationRecord> records;
  ReadJsonLines(path, [&](const Json &row, std::size_t) {
    QuotationRecord record;
    record.id = row.at("id").get<std::string>();
    record.novel_id = row.at("novel").get<std::string>();
    auto read_span = [](const Json &obj, const char *text_key) {
      TextSpan span;
      span.surface = obj.at(text_key).get<std::string>();
      span.range.start = obj.at("offset").get<std::size_t>();
      span.range.end = span.range.start + Utf8Length(span.surface);
      return span;
    };
    auto read_mention = [&](const Json &obj) {
      TextSpan span = read_span(obj, "name");
      Mention mention{span.surface, span.range, std::nullopt};
      const std::string entity = obj.contains("entity") &&
                                         !obj["entity"].is_null()
                                     ? obj["entity"].get<std::string>()
                                     : span.surface;
      mention.character_id = resolver.Resolve(entity, record.id);
      return mention;
    };
    record.quote = read_span(row.at("quotation"), "text");
    if (!row.contains("speaker") || row["speaker"].is_null()) return;
    record.speaker = read_mention(row["speaker"]);
    if (row.contains("addressees")) {
      for (const Json &obj : row["addressees"]) {
        record.addressees.push_back(read_mention(obj));
      }
    }
    if (record.addressees.empty() && !options.keep_addressee_absent) return;
    if (row.contains("cue") && !row["cue"].is_null()) {
      record.cue = read_span(row["cue"], "text");
    }
    if (row.contains("mode") && !row["mode"].is_null()) {
      record.mode = read_span(row["mode"], "text");
    }
    if (row.contains("candidates")) {
      std::vector<std::string> ids;
      for (const Json &name : row["candidates"]) {
        ids.push_back(resolver.Resolve(name.get<std::string>(), record.id));
      }
      record.candidates = std::move(ids);
    }
    records.push_back(std::move(record));
  });
  return records;
}

Json SpanJson(const std::string &surface, const CharRange &range) {
  Json obj;
  obj["surface"] = surface;
  obj["start"] = range.start;
  obj["end"] = range.end;
  return obj;
}

Json MentionJson(const Mention &mention) {
  Json obj = SpanJson(mention.surface, mention.range);
  if (mention.character_id) obj["character_id"] = *mention.character_id;
  return obj;
}

}  // namespace

Corpus LoadCorpus(const CorpusFiles &files, Dialect dialect,
                  const ImportOptions &options) {
  Corpus corpus;
  corpus.novels = ReadNovels(files.novels);
  if (dialect == Dialect::kCanonical) {
    corpus.roster = ReadRoster(files.roster);
    corpus.quotations = ReadCanonicalQuotations(files.quotations);
  } else {
    const bool have_roster = fs::exists(files.roster);
    if (have_roster) corpus.roster = ReadRoster(files.roster);
    EntityResolver resolver(&corpus.roster, !have_roster);
    corpus.quotations =
        dialect == Dialect::kRiquaImport
            ? ReadRiquaQuotations(files.quotations, corpus.novels, resolver,
                                  options)
            : ReadJyqQuotations(files.quotations, resolver, options);
  }
  if (options.drop_cue_and_mode) {
    for (QuotationRecord &record : corpus.quotations) {
      record.cue.reset();
      record.mode.reset();
    }
  }
  CheckCorpus(corpus);
  return corpus;
}

void SaveCanonical(const Corpus &corpus, const CorpusFiles &files) {
  std::vector<Json> novels;
  for (const auto &[id, novel] : corpus.novels) {
    Json row;
    row["novel_id"] = novel.id;
    row["title"] = novel.title;
    row["author"] = novel.author;
    row["lang"] = LangName(novel.lang);
    row["text"] = Utf8Encode(novel.text);
    novels.push_back(std::move(row));
  }
  std::vector<Json> roster;
  for (const CharacterEntity &entity : corpus.roster) {
    Json row;
    row["id"] = entity.id;
    row["canonical_name"] = entity.canonical_name;
    row["aliases"] = entity.aliases;
    row["stance"] = StanceName(entity.stance);
    roster.push_back(std::move(row));
  }
  std::vector<Json> quotations;
  for (const QuotationRecord &record : corpus.quotations) {
    Json row;
    row["id"] = record.id;
    row["novel_id"] = record.novel_id;
    row["quote"] = SpanJson(record.quote.surface, record.quote.range);
    row["speaker"] = MentionJson(record.speaker);
    row["addressees"] = Json::array();
    for (const Mention &addressee : record.addressees) {
      row["addressees"].push_back(MentionJson(addressee));
    }
    if (record.cue) row["cue"] = SpanJson(record.cue->surface, record.cue->range);
    if (record.mode) {
      row["mode"] = SpanJson(record.mode->surface, record.mode->range);
    }
    if (record.monologue) row["monologue"] = true;
    if (record.candidates) row["candidates"] = *record.candidates;
    quotations.push_back(std::move(row));
  }
  WriteJsonLines(files.novels, novels);
  WriteJsonLines(files.roster, roster);
  WriteJsonLines(files.quotations, quotations);
}

}  // namespace quoteattr
