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

#include "quoteattr/cli.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "quoteattr/backends.h"
#include "quoteattr/corpus_io.h"
#include "quoteattr/dialogue_network.h"
#include "quoteattr/evaluation.h"
#include "quoteattr/guidelines.h"
#include "quoteattr/jsonl.h"

namespace quoteattr {

namespace fs = std::filesystem;

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig:
    case ErrorKind::kTemplate:
    case ErrorKind::kLoad:
      return kExitConfig;
    case ErrorKind::kTransport:
    case ErrorKind::kApi:
      return kExitTransport;
    case ErrorKind::kParse:
    case ErrorKind::kIntegrity:
    case ErrorKind::kReference:
    case ErrorKind::kInput:
    case ErrorKind::kBounds:
    case ErrorKind::kNoCandidate:
    case ErrorKind::kIo:
      return kExitData;
  }
  return kExitData;
}

SplitRatios ParseRatios(std::string_view text) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    const std::string piece(text.substr(
        start, colon == std::string_view::npos ? std::string_view::npos
                                               : colon - start));
    char *end = nullptr;
    const double value = std::strtod(piece.c_str(), &end);
    if (piece.empty() || end != piece.c_str() + piece.size() ||
        !(value > 0) || !std::isfinite(value)) {
      throw Error(ErrorKind::kConfig,
                  "bad ratios '" + std::string(text) + "' (expected 8:1:1)");
    }
    parts.push_back(value);
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3) {
    throw Error(ErrorKind::kConfig,
                "ratios need three parts: '" + std::string(text) + "'");
  }
  const double sum = parts[0] + parts[1] + parts[2];
  SplitRatios ratios{parts[0] / sum, parts[1] / sum, 0};
  ratios.test = 1.0 - ratios.train - ratios.dev;
  return ratios;
}

namespace {

struct RunConfig {
  std::string corpus;
  std::string dialect = "canonical";
  std::string window;
  std::string template_path;
  std::string backend = "rule";
  std::string mode = "zero";
  std::string ratios = "8:1:1";
  std::uint64_t seed = 0;
  std::string out = "out";

  // Subcommand extras.
  bool keep_addressee_absent = false;
  bool drop_cue_and_mode = false;
  std::string train;
  std::string lexicon;
  std::string llm_config;
  std::string cache;
  bool offline = false;
  std::string model_replay;
  std::string model_command;
  std::string model_dir;
  std::size_t max_text_length = 0;
  std::string predictions;
  std::string policy = "overlap";
  std::string annotator_a;
  std::string annotator_b;
  std::size_t top_k = kDefaultTopK;
  std::string smoothing = "log1p";
  std::vector<std::string> formats = {"dot", "graphml", "json"};
  std::vector<std::string> runs;
};

Corpus LoadFrom(const RunConfig &cfg) {
  if (cfg.corpus.empty()) throw Error(ErrorKind::kConfig, "--corpus is required");
  if (!fs::is_directory(cfg.corpus)) {
    throw Error(ErrorKind::kConfig, "corpus directory not found: " + cfg.corpus);
  }
  ImportOptions options;
  options.keep_addressee_absent = cfg.keep_addressee_absent;
  options.drop_cue_and_mode = cfg.drop_cue_and_mode;
  return LoadCorpus(CorpusFiles::InDirectory(cfg.corpus),
                    ParseDialect(cfg.dialect), options);
}

std::optional<WindowSpec> WindowFrom(const RunConfig &cfg) {
  if (cfg.window.empty()) return std::nullopt;
  return WindowSpec::Parse(cfg.window);
}

TemplateSet TemplatesFrom(const RunConfig &cfg) {
  TemplateSet templates;
  if (!cfg.template_path.empty()) {
    if (!fs::exists(cfg.template_path)) {
      throw Error(ErrorKind::kConfig,
                  "template file not found: " + cfg.template_path);
    }
    const PromptTemplate tmpl = PromptTemplate::FromFile(cfg.template_path);
    templates[tmpl.lang] = tmpl;
  }
  return templates;
}

void RequireFile(const std::string &path, const char *flag) {
  if (path.empty()) {
    throw Error(ErrorKind::kConfig, std::string(flag) + " is required");
  }
  if (!fs::exists(path)) {
    throw Error(ErrorKind::kConfig,
                std::string(flag) + " file not found: " + path);
  }
}

int CmdImport(const RunConfig &cfg, std::ostream &out) {
  const Corpus corpus = LoadFrom(cfg);
  SaveCanonical(corpus, CorpusFiles::InDirectory(cfg.out));
  out << "imported " << corpus.novels.size() << " novels, "
      << corpus.roster.size() << " characters, " << corpus.quotations.size()
      << " quotations into " << cfg.out << "\n";
  return kExitOk;
}

int CmdValidate(const RunConfig &cfg, std::ostream &out) {
  const Corpus corpus = LoadFrom(cfg);
  const std::vector<Violation> violations =
      ValidateGuidelines(corpus, WindowFrom(cfg));
  std::vector<Json> rows;
  std::map<std::string, std::size_t> by_rule;
  for (const Violation &v : violations) {
    rows.push_back({{"record_id", v.record_id},
                    {"rule", GuidelineRuleId(v.rule)},
                    {"message", v.message}});
    ++by_rule[std::string(GuidelineRuleId(v.rule))];
  }
  WriteJsonLines(fs::path(cfg.out) / "violations.jsonl", rows);
  out << "integrity ok; " << violations.size() << " guideline violations in "
      << corpus.quotations.size() << " quotations\n";
  for (const auto &[rule, count] : by_rule) {
    out << "  " << rule << ": " << count << "\n";
  }
  return kExitOk;
}

int CmdStats(const RunConfig &cfg, std::ostream &out) {
  const Corpus corpus = LoadFrom(cfg);
  const ElementStats stats = ComputeElementStats(corpus);
  Json doc = {{"total", stats.total}};
  out << "quotations " << stats.total << "\n";
  for (Element e : {Element::kSpeaker, Element::kAddressee, Element::kCue,
                    Element::kMode}) {
    const ElementCount &c = stats.of(e);
    doc[std::string(ElementName(e))] = {{"present", c.present},
                                        {"rate", c.rate}};
    char line[128];
    std::snprintf(line, sizeof line, "%-10s %8zu %7s%%\n",
                  std::string(ElementName(e)).c_str(), c.present,
                  FormatPercent(c.rate).c_str());
    out << line;
  }
  WriteFile(fs::path(cfg.out) / "stats.json", doc.dump(2) + "\n");
  return kExitOk;
}

int CmdSplit(const RunConfig &cfg, std::ostream &out) {
  const Corpus corpus = LoadFrom(cfg);
  const CorpusSplit split =
      SplitCorpus(corpus, ParseRatios(cfg.ratios), cfg.seed);
  const std::pair<const char *, const Corpus *> parts[] = {
      {"train", &split.train}, {"dev", &split.dev}, {"test", &split.test}};
  for (const auto &[name, part] : parts) {
    SaveCanonical(*part, CorpusFiles::InDirectory(fs::path(cfg.out) / name));
    out << name << " " << part->quotations.size() << "\n";
  }
  return kExitOk;
}

std::unique_ptr<Backend> MakeBackend(const RunConfig &cfg,
                                     const Corpus &corpus) {
  const TemplateSet templates = TemplatesFrom(cfg);
  if (cfg.backend == "rule") {
    RuleLexicon lexicon;
    if (!cfg.lexicon.empty()) {
      RequireFile(cfg.lexicon, "--lexicon");
      lexicon = RuleLexicon::FromFile(cfg.lexicon);
    }
    return std::make_unique<RuleBackend>(std::move(lexicon));
  }
  if (cfg.backend == "llm") {
    RequireFile(cfg.llm_config, "--llm-config");
    const LlmClientConfig config = LlmClientConfig::FromFile(cfg.llm_config);
    const fs::path cache_path =
        cfg.cache.empty() ? fs::path(cfg.out) / "cache.jsonl" : fs::path(cfg.cache);
    auto cache = std::make_shared<ResponseCache>(cache_path);
    std::shared_ptr<const LlmClient> client;
    if (!cfg.offline) client = std::make_shared<LlmClient>(config);
    return std::make_unique<LlmBackend>(client, cache, config.model_name,
                                        templates);
  }
  if (cfg.backend == "seq2seq") {
    Lang lang = Lang::kZh;
    if (!corpus.novels.empty()) lang = corpus.novels.begin()->second.lang;
    TrainConfig train = TrainConfig::DefaultFor(lang);
    if (cfg.max_text_length > 0) train.max_text_length = cfg.max_text_length;
    std::unique_ptr<Seq2SeqModel> model;
    if (!cfg.model_replay.empty()) {
      model = std::make_unique<ReplayModel>(cfg.model_replay);
    } else if (!cfg.model_command.empty()) {
      model = std::make_unique<ExternalCommandModel>(cfg.model_command,
                                                     cfg.model_dir);
    } else {
      throw Error(ErrorKind::kConfig,
                  "seq2seq backend needs --model-replay or --model-command");
    }
    return std::make_unique<Seq2SeqBackend>(
        std::make_shared<Seq2SeqAdapter>(std::move(model), train), templates);
  }
  throw Error(ErrorKind::kConfig, "bad backend '" + cfg.backend +
                                      "' (expected rule, llm or seq2seq)");
}

int CmdPredict(const RunConfig &cfg, std::ostream &out) {
  const Corpus corpus = LoadFrom(cfg);
  const std::optional<WindowSpec> window = WindowFrom(cfg);
  PromptMode mode = PromptMode::Parse(cfg.mode);
  if (mode.kind == PromptMode::Kind::kFewShot) {
    if (cfg.train.empty()) {
      throw Error(ErrorKind::kConfig, "few-shot mode needs --train");
    }
    RunConfig train_cfg = cfg;
    train_cfg.corpus = cfg.train;
    const Corpus train = LoadFrom(train_cfg);
    const std::vector<Segment> train_segments = BuildSegments(train, window);
    mode.exemplars = SelectExemplars(train_segments, mode.k);
  }
  std::unique_ptr<Backend> backend = MakeBackend(cfg, corpus);
  const std::vector<Segment> segments = BuildSegments(corpus, window);
  const std::vector<IdentifyOutcome> outcomes =
      backend->IdentifyAll(segments, mode);

  std::vector<PredictionRecord> predictions;
  std::vector<Json> errors;
  std::size_t truncated = 0;
  std::optional<ErrorKind> first_error;
  for (const IdentifyOutcome &o : outcomes) {
    truncated += o.truncated;
    if (o.ok()) {
      predictions.push_back({o.segment_id, o.prediction->speaker,
                             o.prediction->addressees, backend->name(),
                             mode.ToString()});
      continue;
    }
    if (!first_error) first_error = o.error_kind;
    Json row = {{"segment_id", o.segment_id},
                {"kind", ErrorKindName(*o.error_kind)},
                {"message", o.error_message}};
    if (!o.raw_response.empty()) row["raw_response"] = o.raw_response;
    errors.push_back(std::move(row));
  }
  const fs::path dir(cfg.out);
  WritePredictions(dir / "predictions.jsonl", predictions);
  WriteJsonLines(dir / "errors.jsonl", errors);
  const Json run = {{"backend", backend->name()},
                    {"mode", mode.ToString()},
                    {"window", window ? window->ToString() : "default"},
                    {"segments", outcomes.size()},
                    {"predicted", predictions.size()},
                    {"failed", errors.size()},
                    {"truncated", truncated}};
  WriteFile(dir / "run.json", run.dump(2) + "\n");
  out << "predicted " << predictions.size() << "/" << outcomes.size()
      << " segments with " << backend->name() << " (" << mode.ToString()
      << ")\n";
  if (errors.empty()) return kExitOk;
  if (predictions.empty()) return ExitCodeFor(*first_error);
  return kExitPartial;
}

int CmdEval(const RunConfig &cfg, std::ostream &out) {
  const Corpus corpus = LoadFrom(cfg);
  RequireFile(cfg.predictions, "--predictions");
  const std::vector<PredictionRecord> predictions =
      ReadPredictions(cfg.predictions);
  const EvalReport report =
      Score(predictions, corpus.quotations, corpus.roster,
            ParseAddresseePolicy(cfg.policy));
  const std::string text = FormatReport(report);
  WriteFile(fs::path(cfg.out) / "report.txt", text);
  WriteFile(fs::path(cfg.out) / "report.json",
            ReportToJson(report).dump(2) + "\n");
  out << text;
  return kExitOk;
}

int CmdIaa(const RunConfig &cfg, std::ostream &out) {
  RequireFile(cfg.annotator_a, "--a");
  RequireFile(cfg.annotator_b, "--b");
  AddresseeAnnotation universe;
  const AddresseeAnnotation a = ReadAnnotation(cfg.annotator_a, &universe);
  const AddresseeAnnotation b = ReadAnnotation(cfg.annotator_b, &universe);
  const IaaReport report = ComputeIaa(a, b, universe);
  const Json doc = {{"f1", report.f1},
                    {"kappa", report.kappa},
                    {"judgment_count", report.judgment_count}};
  WriteFile(fs::path(cfg.out) / "iaa.json", doc.dump(2) + "\n");
  char line[128];
  std::snprintf(line, sizeof line, "f1 %.4f\nkappa %.4f\njudgments %zu\n",
                report.f1, report.kappa, report.judgment_count);
  out << line;
  return kExitOk;
}

int CmdNetwork(const RunConfig &cfg, std::ostream &out) {
  const Corpus corpus = LoadFrom(cfg);
  const DialogueNetwork net =
      BuildNetwork(corpus, cfg.top_k == 0 ? kNoTopK : cfg.top_k,
                   ParseSmoothing(cfg.smoothing));
  for (const std::string &name : cfg.formats) {
    const fs::path path = fs::path(cfg.out) / ("network." + name);
    ExportNetwork(net, ParseNetworkFormat(name), path);
    out << "wrote " << path.string() << "\n";
  }
  out << net.nodes.size() << " nodes, " << net.edges.size() << " edges\n";
  return kExitOk;
}

int CmdReport(const RunConfig &cfg, std::ostream &out) {
  const Corpus corpus = LoadFrom(cfg);
  if (cfg.runs.empty()) {
    throw Error(ErrorKind::kConfig, "--run label=predictions.jsonl is required");
  }
  std::map<std::string, std::vector<PredictionRecord>> runs;
  for (const std::string &spec : cfg.runs) {
    const std::size_t eq = spec.find('=');
    const std::string label = eq == std::string::npos ? spec : spec.substr(0, eq);
    const std::string path = eq == std::string::npos ? spec : spec.substr(eq + 1);
    RequireFile(path, "--run");
    runs[label] = ReadPredictions(path);
  }
  const std::vector<DiffCase> cases =
      DiffReport(runs, corpus.quotations, corpus.roster,
                 ParseAddresseePolicy(cfg.policy));
  std::vector<Json> rows;
  for (const DiffCase &c : cases) rows.push_back(DiffCaseToJson(c));
  WriteJsonLines(fs::path(cfg.out) / "cases.jsonl", rows);
  out << cases.size() << " cases across " << runs.size() << " runs\n";
  return kExitOk;
}

int CmdExport(const RunConfig &cfg, std::ostream &out) {
  const Corpus corpus = LoadFrom(cfg);
  const std::vector<Segment> segments = BuildSegments(corpus, WindowFrom(cfg));
  Lang lang = Lang::kZh;
  if (!corpus.novels.empty()) lang = corpus.novels.begin()->second.lang;
  const std::size_t max_length = cfg.max_text_length > 0
                                     ? cfg.max_text_length
                                     : TrainConfig::DefaultFor(lang).max_text_length;
  const ExportSummary summary =
      ExportTrainingPairs(segments, TemplatesFrom(cfg), max_length,
                          fs::path(cfg.out) / "train_pairs.jsonl");
  out << "exported " << summary.pairs << " pairs (" << summary.truncated
      << " longer than " << max_length << " tokens)\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err) {
  RunConfig cfg;
  CLI::App app{"Speaker and addressee identification toolkit", "quoteattr"};
  app.require_subcommand(1);

  auto corpus_flags = [&](CLI::App *cmd) {
    cmd->add_option("--corpus", cfg.corpus, "Corpus directory")->required();
    cmd->add_option("--dialect", cfg.dialect, "canonical, riqua or jyq");
    cmd->add_option("--out", cfg.out, "Output directory");
  };
  auto window_flag = [&](CLI::App *cmd) {
    cmd->add_option("--window", cfg.window, "token:B:A or sent:B:A");
  };

  CLI::App *import = app.add_subcommand("import", "Convert to canonical layout");
  corpus_flags(import);
  import->add_flag("--keep-addressee-absent", cfg.keep_addressee_absent);
  import->add_flag("--drop-cue-and-mode", cfg.drop_cue_and_mode);

  CLI::App *validate = app.add_subcommand("validate", "Integrity and guidelines");
  corpus_flags(validate);
  window_flag(validate);

  CLI::App *stats = app.add_subcommand("stats", "Element occurrence rates");
  corpus_flags(stats);

  CLI::App *split = app.add_subcommand("split", "Train/dev/test split");
  corpus_flags(split);
  split->add_option("--ratios", cfg.ratios, "train:dev:test");
  split->add_option("--seed", cfg.seed);

  CLI::App *predict = app.add_subcommand("predict", "Run a backend");
  corpus_flags(predict);
  window_flag(predict);
  predict->add_option("--backend", cfg.backend, "rule, llm or seq2seq");
  predict->add_option("--mode", cfg.mode, "zero or few:K");
  predict->add_option("--template", cfg.template_path, "Prompt template JSON");
  predict->add_option("--train", cfg.train, "Corpus supplying exemplars");
  predict->add_option("--lexicon", cfg.lexicon, "Rule lexicon JSON");
  predict->add_option("--llm-config", cfg.llm_config, "LLM client JSON");
  predict->add_option("--cache", cfg.cache, "Response cache path");
  predict->add_flag("--offline", cfg.offline, "Replay the cache only");
  predict->add_option("--model-replay", cfg.model_replay);
  predict->add_option("--model-command", cfg.model_command);
  predict->add_option("--model-dir", cfg.model_dir);
  predict->add_option("--max-text-length", cfg.max_text_length);

  CLI::App *eval = app.add_subcommand("eval", "Score predictions");
  corpus_flags(eval);
  eval->add_option("--predictions", cfg.predictions)->required();
  eval->add_option("--policy", cfg.policy, "overlap or exact");

  CLI::App *iaa = app.add_subcommand("iaa", "Annotator agreement");
  iaa->add_option("--a", cfg.annotator_a)->required();
  iaa->add_option("--b", cfg.annotator_b)->required();
  iaa->add_option("--out", cfg.out);

  CLI::App *network = app.add_subcommand("network", "Dialogue network");
  corpus_flags(network);
  network->add_option("--top-k", cfg.top_k, "0 keeps every character");
  network->add_option("--smoothing", cfg.smoothing, "log1p, sqrt or identity");
  network->add_option("--format", cfg.formats, "dot, graphml, json")
      ->delimiter(',');

  CLI::App *report = app.add_subcommand("report", "Case-level diff");
  corpus_flags(report);
  report->add_option("--run", cfg.runs, "label=predictions.jsonl")->required();
  report->add_option("--policy", cfg.policy, "overlap or exact");

  CLI::App *exp = app.add_subcommand("export", "Fine-tuning pairs");
  corpus_flags(exp);
  window_flag(exp);
  exp->add_option("--template", cfg.template_path);
  exp->add_option("--max-text-length", cfg.max_text_length);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  try {
    if (import->parsed()) return CmdImport(cfg, out);
    if (validate->parsed()) return CmdValidate(cfg, out);
    if (stats->parsed()) return CmdStats(cfg, out);
    if (split->parsed()) return CmdSplit(cfg, out);
    if (predict->parsed()) return CmdPredict(cfg, out);
    if (eval->parsed()) return CmdEval(cfg, out);
    if (iaa->parsed()) return CmdIaa(cfg, out);
    if (network->parsed()) return CmdNetwork(cfg, out);
    if (report->parsed()) return CmdReport(cfg, out);
    if (exp->parsed()) return CmdExport(cfg, out);
  } catch (const Error &e) {
    err << "error (" << ErrorKindName(e.kind()) << "): " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitConfig;
}

}  // namespace quoteattr
