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

// Acceptance checks AC1..AC10. Prints one PASS/FAIL line per criterion and
// exits nonzero when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "fixtures.h"
#include "quoteattr/backends.h"
#include "quoteattr/corpus_io.h"
#include "quoteattr/dialogue_network.h"
#include "quoteattr/evaluation.h"
#include "quoteattr/llm_client.h"
#include "quoteattr/rule_baseline.h"
#include "quoteattr/text_windows.h"
#include "quoteattr/utf8.h"
#include "stub_server.h"

namespace quoteattr {
namespace {

constexpr double kExact = 0.0;           // AC1, AC5, AC9 count comparisons
constexpr double kKappaTolerance = 1e-9;  // AC2
constexpr double kRateTolerance = 0.005;  // AC3, percent rounded to 2 dp
constexpr double kMaxScoreSeconds = 1.0;  // AC1
constexpr double kJyqCueRate = 99.13;     // AC3, percent
constexpr double kJyqModeRate = 48.01;    // AC3, percent

struct Outcome {
  bool pass = true;
  std::string detail;

  void Check(bool ok, const std::string &what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

// AC1 ------------------------------------------------------------------------

Outcome MetricOracle() {
  Outcome o;
  // Hand count: speaker wrong at 2, 7, 11, 19; addressee wrong at 7, 8, 15.
  const auto f =
      testing::MakeScoringFixture(2026, 20, {2, 7, 11, 19}, {7, 8, 15});
  const auto start = std::chrono::steady_clock::now();
  const EvalReport r =
      Score(f.predictions, f.corpus.quotations, f.corpus.roster);
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  o.Check(std::abs(r.overall.speaker_acc() - 16.0 / 20) <= kExact,
          "speaker accuracy != 16/20");
  o.Check(std::abs(r.overall.addressee_acc() - 17.0 / 20) <= kExact,
          "addressee accuracy != 17/20");
  o.Check(std::abs(r.overall.both_acc() - 14.0 / 20) <= kExact,
          "both accuracy != 14/20");
  o.Check(seconds < kMaxScoreSeconds, "scoring took over 1 s");
  if (o.pass) {
    o.detail = "80.00/85.00/70.00 on the 20-segment fixture (" +
               FormatPercent(r.overall.speaker_acc()) + "/" +
               FormatPercent(r.overall.addressee_acc()) + "/" +
               FormatPercent(r.overall.both_acc()) + ")";
  }
  return o;
}

// AC2 ------------------------------------------------------------------------

struct KappaTable {
  AddresseeAnnotation a, b, universe;
};

KappaTable MakeTable(int yy, int yn, int ny, int nn) {
  KappaTable t;
  int k = 0;
  auto add = [&](int count, bool in_a, bool in_b) {
    for (int i = 0; i < count; ++i, ++k) {
      const std::string seg = "s" + std::to_string(k / 4);
      const std::string c = "c" + std::to_string(k % 4);
      t.universe[seg].insert(c);
      t.a[seg];
      t.b[seg];
      if (in_a) t.a[seg].insert(c);
      if (in_b) t.b[seg].insert(c);
    }
  };
  add(yy, true, true);
  add(yn, true, false);
  add(ny, false, true);
  add(nn, false, false);
  return t;
}

Outcome KappaF1Oracle() {
  Outcome o;
  const KappaTable t = MakeTable(45, 5, 5, 45);
  const double k = CohensKappa(t.a, t.b, t.universe);
  o.Check(std::abs(k - 0.8) <= kKappaTolerance, "45/5/5/45 kappa != 0.8");
  o.Check(std::abs(CohensKappa(t.a, t.a, t.universe) - 1.0) <= kKappaTolerance,
          "identical kappa != 1");
  o.Check(IaaF1(t.a, t.a) == 1.0, "identical F1 != 1");
  const KappaTable indep = MakeTable(16, 24, 24, 36);  // marginals 0.4 x 0.4
  const double k0 = CohensKappa(indep.a, indep.b, indep.universe);
  o.Check(std::abs(k0) <= kKappaTolerance, "independent kappa != 0");
  if (o.pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "kappa 45/5/5/45 = %.12f, independent = %.1e",
                  k, k0);
    o.detail = buf;
  }
  return o;
}

// AC3 ------------------------------------------------------------------------

Outcome CorpusStatistics() {
  Outcome o;
  for (std::uint64_t seed = 1; seed <= 20 && o.pass; ++seed) {
    const Corpus c = testing::RandomCorpus(
        seed, {10, 10 + seed * 13, 3, 0.3 + 0.03 * seed, 0.05 * seed});
    const ElementStats s = ComputeElementStats(c);
    std::size_t sp = 0, ad = 0, cue = 0, mode = 0;
    for (const QuotationRecord &q : c.quotations) {
      sp += !q.speaker.surface.empty();
      ad += !q.addressees.empty();
      cue += q.cue.has_value();
      mode += q.mode.has_value();
    }
    o.Check(s.total == c.quotations.size(), "total mismatch");
    o.Check(s.of(Element::kSpeaker).present == sp, "speaker count mismatch");
    o.Check(s.of(Element::kAddressee).present == ad, "addressee count mismatch");
    o.Check(s.of(Element::kCue).present == cue, "cue count mismatch");
    o.Check(s.of(Element::kMode).present == mode, "mode count mismatch");
  }
  if (!o.pass) return o;

  const char *dir = std::getenv("QUOTEATTR_JYQ_CORPUS");
  if (dir == nullptr || *dir == '\0') {
    o.detail =
        "fixture rates equal brute-force counts; released corpus not present "
        "(set QUOTEATTR_JYQ_CORPUS to check 99.13/48.01)";
    return o;
  }
  const Corpus real = LoadCorpus(CorpusFiles::InDirectory(dir), Dialect::kJyqImport,
                                 {false, true});
  const ElementStats s = ComputeElementStats(real);
  const double cue = s.of(Element::kCue).rate * 100;
  const double mode = s.of(Element::kMode).rate * 100;
  o.Check(std::abs(cue - kJyqCueRate) <= kRateTolerance, "cue rate " +
                                                             FormatPercent(cue / 100));
  o.Check(std::abs(mode - kJyqModeRate) <= kRateTolerance,
          "mode rate " + FormatPercent(mode / 100));
  if (o.pass) o.detail = "released corpus cue/mode rates match";
  return o;
}

// AC4 ------------------------------------------------------------------------

std::u32string SyntheticDoc(std::size_t tokens) {
  std::u32string doc;
  for (std::size_t i = 0; i < tokens; ++i) {
    if (i > 0) doc += U' ';
    doc += U"t" + Utf8Decode(std::to_string(i));
  }
  return doc;
}

Outcome WindowExactness() {
  Outcome o;
  const std::u32string doc = SyntheticDoc(400);
  const auto tokens = Tokenize(doc, Lang::kEn);
  o.Check(tokens.size() == 400, "synthetic document is not 400 tokens");
  if (!o.pass) return o;
  const Passage p = TokenWindow(doc, tokens, {200, 210}, 150, 30);
  o.Check(p.source_range.start == tokens[50].start &&
              p.source_range.end == tokens[239].end,
          "window is not tokens [50,240)");

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 2000 && o.pass; ++trial) {
    const std::size_t n = 1 + rng() % 300;
    const std::u32string d = SyntheticDoc(n);
    const auto t = Tokenize(d, Lang::kEn);
    const std::size_t s = rng() % n;
    const std::size_t e = s + 1 + rng() % (n - s);
    const std::size_t before = rng() % 400;
    const std::size_t after = rng() % 400;
    try {
      const Passage w = TokenWindow(d, t, {s, e}, before, after);
      const std::size_t first = s > before ? s - before : 0;
      const std::size_t last = std::min(n, e + after);
      o.Check(w.source_range.start == t[first].start &&
                  w.source_range.end == t[last - 1].end,
              "randomized window mismatch");
    } catch (const Error &err) {
      o.Check(false, std::string("clamping case raised: ") + err.what());
    }
  }
  if (o.pass) o.detail = "tokens [50,240); 2000 randomized clamping cases";
  return o;
}

// AC5 ------------------------------------------------------------------------

Outcome SplitContract() {
  Outcome o;
  for (std::size_t n : {10u, 100u, 1000u}) {
    const Corpus c = testing::RandomCorpus(n, {12, n, 2, 0.9, 0.5});
    const CorpusSplit a = SplitCorpus(c, {0.8, 0.1, 0.1}, 7);
    const CorpusSplit b = SplitCorpus(c, {0.8, 0.1, 0.1}, 7);
    const std::size_t dev = n / 10;
    o.Check(a.dev.quotations.size() == dev && a.test.quotations.size() == dev &&
                a.train.quotations.size() == n - 2 * dev,
            "sizes wrong for n=" + std::to_string(n));
    std::multiset<std::string> ids;
    for (const Corpus *part : {&a.train, &a.dev, &a.test}) {
      for (const QuotationRecord &q : part->quotations) ids.insert(q.id);
    }
    std::multiset<std::string> all;
    for (const QuotationRecord &q : c.quotations) all.insert(q.id);
    o.Check(ids == all, "not a partition for n=" + std::to_string(n));
    o.Check(a.train == b.train && a.dev == b.dev && a.test == b.test,
            "same seed differs for n=" + std::to_string(n));
  }
  if (o.pass) o.detail = "8/1/1, 80/10/10, 800/100/100; reproducible";
  return o;
}

// AC6 ------------------------------------------------------------------------

Outcome RuleBaseline() {
  Outcome o;
  using testing::Character;
  using testing::PassageSegment;
  const std::vector<CharacterEntity> four = {
      Character("zs", "张三"), Character("ls", "李四", {"老四"}),
      Character("ww", "王五"), Character("zl", "赵六")};
  auto run = [&](const std::string &text, const std::string &quote,
                 const std::vector<CharacterEntity> &chars) {
    const Segment s = PassageSegment(Lang::kZh, text, quote, 0, chars);
    const Prediction p = RuleIdentify(s);
    if (!(p == RuleIdentify(s))) o.Check(false, "nondeterministic on " + text);
    return p;
  };
  using Names = std::vector<std::string>;
  auto expect = [&](const Prediction &p, const std::string &speaker,
                    const Names &addressees, const std::string &label) {
    o.Check(p.speaker == speaker && p.addressees == addressees, label);
  };

  expect(run("陆庄主道：“这次来的是那个小王爷的师父，本事可比他大得多，因此我担"
             "了心。”黄蓉道：“咦，你怎么知道？”陆庄主道：",
             "“咦，你怎么知道？”",
             {Character("lu", "陆乘风", {"陆庄主"}), Character("hr", "黄蓉")}),
         "黄蓉", {"陆庄主"}, "dialogue excerpt");
  expect(run("李四坐在一旁。张三对店小二道：“来壶酒。”", "“来壶酒。”", four),
         "张三", {"李四"}, "candidate-only answers");
  o.Check(run("张三说：“走吧。”王五说。", "“走吧。”", four).speaker == "张三",
          "preceding clause priority");
  expect(run("张三道：“你来了。”李四道：“来了。”", "“你来了。”", four), "张三",
         {"李四"}, "immediate addressee");
  expect(run("王五在屋外。张三道：“李四，你出去。”", "“李四，你出去。”", four),
         "张三", {"王五"}, "quote-internal mention avoided");
  expect(run("张三道：“李四，你出去。”", "“李四，你出去。”", four), "张三",
         {"李四"}, "quote-internal mention as last resort");
  expect(run("张三对李四道：“走吧，李四。”李四、老四点头。", "“走吧，李四。”",
             four),
         "张三", {"李四"}, "single annotation per character");
  expect(run("张三对李四、王五道：“走吧。”", "“走吧。”", four), "张三",
         {"李四", "王五"}, "group dialogue");
  expect(run("张三心想：“此事不妙。”李四走来。", "“此事不妙。”", four), "张三",
         {}, "no addressee");
  if (o.pass) o.detail = "黄蓉 -> 陆庄主; 9 guideline-trace fixtures";
  return o;
}

// AC7 ------------------------------------------------------------------------

Outcome PromptRoundTrip() {
  Outcome o;
  const std::vector<std::string> en = {"Tom", "Huck", "he", "Moisey Moisevitch",
                                       "Kuzmitchov", "Olga Ivanovna"};
  const std::vector<std::string> zh = {"郭靖", "黄蓉", "陆庄主", "江南六怪",
                                       "梅超风", "裘千仞", "朱聪"};
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 3000 && o.pass; ++trial) {
    const Lang lang = trial % 2 ? Lang::kZh : Lang::kEn;
    std::vector<std::string> pool = lang == Lang::kZh ? zh : en;
    std::shuffle(pool.begin(), pool.end(), rng);
    Prediction p;
    p.speaker = pool[0];
    p.addressees.assign(pool.begin() + 1, pool.begin() + 1 + rng() % 4);
    const std::string joined = JoinAddressees(p.addressees, lang);
    const std::string variants[] = {
        FormatAnswer(p, lang),
        lang == Lang::kZh
            ? "听话人：「" + joined + "」；说话人：「" + p.speaker + "」"
            : "Addressee: " + joined + "\nSpeaker: " + p.speaker,
        lang == Lang::kZh
            ? "Speaker: \"" + p.speaker + "\" ,  Addressee： \"" + joined + "\""
            : "SPEAKER：“" + p.speaker + "”，ADDRESSEE：“" + joined + "”",
    };
    for (const std::string &v : variants) {
      const Prediction q = ParsePrediction(v, lang);
      o.Check(q.speaker == p.speaker && q.addressees == p.addressees,
              "round trip failed on: " + v);
    }
  }
  struct Printed {
    const char *text;
    Lang lang;
    const char *speaker;
    const char *addressee;
  };
  const Printed printed[] = {
      {"Speaker: \"he\",  Addressee: \"Kuzmitchov\"", Lang::kEn, "he",
       "Kuzmitchov"},
      {"Speaker: \"黄蓉\" ,  Addressee： \"陆庄主\"", Lang::kZh, "黄蓉",
       "陆庄主"},
      {"Speaker: \"梅超风\" ,  Addressee： \"裘千仞\"", Lang::kZh, "梅超风",
       "裘千仞"},
  };
  for (const Printed &pr : printed) {
    const Prediction q = ParsePrediction(pr.text, pr.lang);
    o.Check(q.speaker == pr.speaker &&
                q.addressees == std::vector<std::string>{pr.addressee},
            std::string("printed answer: ") + pr.text);
  }
  if (o.pass) o.detail = "9000 variants; three printed answers parse";
  return o;
}

// AC8 ------------------------------------------------------------------------

Outcome NetworkConservation() {
  Outcome o;
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40 && o.pass; ++trial) {
    const std::size_t chars = 2 + rng() % 49;
    const std::size_t quotes = 1 + rng() % 500;
    const Corpus c = testing::RandomCorpus(rng(), {chars, quotes, 4, 0.9, 0.5});
    const DialogueNetwork net = BuildNetwork(c, 1 + rng() % chars);
    std::set<std::string> kept;
    for (const NetworkNode &n : net.nodes) kept.insert(n.id);
    std::map<std::pair<std::string, std::string>, std::size_t> brute;
    for (const QuotationRecord &q : c.quotations) {
      if (!kept.contains(*q.speaker.character_id)) continue;
      for (const Mention &a : q.addressees) {
        if (kept.contains(*a.character_id)) {
          ++brute[{*q.speaker.character_id, *a.character_id}];
        }
      }
    }
    std::map<std::pair<std::string, std::string>, std::size_t> got;
    for (const NetworkEdge &e : net.edges) got[{e.from, e.to}] = e.count;
    o.Check(got == brute, "edge recount mismatch");
    o.Check(ParseNetworkJson(RenderNetwork(net, NetworkFormat::kJson)) == net,
            "json round trip");
    for (const NetworkNode &n : net.nodes) {
      const std::string dot_attr =
          "fillcolor=\"" + std::string(StanceColor(n.stance)) + "\"";
      o.Check(RenderNetwork(net, NetworkFormat::kDot).find(dot_attr) !=
                  std::string::npos,
              "missing color attribute");
    }
  }
  o.Check(StanceColor(Stance::kProtagonist) == "darksalmon" &&
              StanceColor(Stance::kVillain) == "aquamarine",
          "stance colors");
  if (o.pass) o.detail = "40 random corpora; json round trip; stance colors";
  return o;
}

// AC9 ------------------------------------------------------------------------

// window -> prompt -> cached replay -> parse -> score.
Accuracy RunPipeline(const Corpus &corpus, const std::set<std::size_t> &corrupt) {
  const std::vector<Segment> segments =
      BuildSegments(corpus, WindowSpec::Sentences(5, 5));
  auto cache = std::make_shared<ResponseCache>();
  for (std::size_t i = 0; i < segments.size(); ++i) {
    Prediction answer = GoldPrediction(segments[i]);
    if (corrupt.contains(i)) {
      std::set<std::string> taken = {answer.speaker};
      taken.insert(answer.addressees.begin(), answer.addressees.end());
      for (const CharacterEntity &c : corpus.roster) {
        if (!taken.contains(c.canonical_name)) {
          answer.addressees = {c.canonical_name};
          break;
        }
      }
    }
    cache->Put("replay",
               RenderPrompt(PromptTemplate::Default(segments[i].lang),
                            segments[i], PromptMode::ZeroShot()),
               FormatAnswer(answer, segments[i].lang));
  }
  LlmBackend backend(nullptr, cache, "replay");
  std::vector<PredictionRecord> predictions;
  for (const IdentifyOutcome &out :
       backend.IdentifyAll(segments, PromptMode::ZeroShot())) {
    if (out.ok()) {
      predictions.push_back({out.segment_id, out.prediction->speaker,
                             out.prediction->addressees, "llm", "zero"});
    }
  }
  return Score(predictions, corpus.quotations, corpus.roster).overall;
}

Outcome PipelineReplay() {
  Outcome o;
  const Corpus corpus = testing::RandomCorpus(909, {12, 10, 3, 1.0, 0.3});
  const Accuracy clean = RunPipeline(corpus, {});
  const Accuracy noisy = RunPipeline(corpus, {1, 4, 8});
  auto near = [](double x, double y) { return std::abs(x - y) <= kExact; };
  o.Check(clean.n == 10 && near(clean.both_acc(), 1.0), "gold replay below 100%");
  o.Check(near(noisy.speaker_acc(), 1.0) && near(noisy.addressee_acc(), 0.7) &&
              near(noisy.both_acc(), 0.7),
          "corrupted replay is " + FormatPercent(noisy.speaker_acc()) + "/" +
              FormatPercent(noisy.addressee_acc()) + "/" +
              FormatPercent(noisy.both_acc()));
  if (o.pass) {
    o.detail = "gold replay " + FormatPercent(clean.speaker_acc()) + "/" +
               FormatPercent(clean.addressee_acc()) + "/" +
               FormatPercent(clean.both_acc()) + ", 3-of-10 corrupted " +
               FormatPercent(noisy.speaker_acc()) + "/" +
               FormatPercent(noisy.addressee_acc()) + "/" +
               FormatPercent(noisy.both_acc()) +
               " (headline table numbers need full corpora and models)";
  }
  return o;
}

// AC10 -----------------------------------------------------------------------

Outcome LlmClientContract() {
  Outcome o;
  setenv("QUOTEATTR_ACCEPTANCE_KEY", "k", 1);
  testing::StubServer server;
  LlmClientConfig config;
  config.endpoint = server.endpoint();
  config.model_name = "stub";
  config.api_key_env = "QUOTEATTR_ACCEPTANCE_KEY";
  config.parallelism = 3;
  config.initial_backoff = std::chrono::milliseconds(250);
  config.backoff_multiplier = 3;

  server.set_delay(std::chrono::milliseconds(20));
  {
    LlmClient client(config);
    std::vector<std::string> prompts;
    for (int i = 0; i < 15; ++i) prompts.push_back("p" + std::to_string(i));
    const auto results = client.CompleteAll(prompts);
    for (std::size_t i = 0; i < results.size(); ++i) {
      o.Check(results[i].ok() && results[i].text == "echo:" + prompts[i],
              "bad completion " + std::to_string(i));
    }
    o.Check(server.max_in_flight() <= config.parallelism,
            "in-flight peak " + std::to_string(server.max_in_flight()));
  }
  server.set_delay(std::chrono::milliseconds(0));

  std::vector<std::chrono::milliseconds> sleeps;
  {
    server.FailNext(3, 503);
    LlmClient client(config,
                     [&](std::chrono::milliseconds d) { sleeps.push_back(d); });
    o.Check(client.Complete("x") == "echo:x", "retry did not recover");
    const std::vector<std::chrono::milliseconds> expected = {
        std::chrono::milliseconds(250), std::chrono::milliseconds(750),
        std::chrono::milliseconds(2250)};
    o.Check(sleeps == expected, "backoff schedule differs");
  }

  const auto dir = testing::TempDir("acceptance-cache");
  const Corpus corpus = testing::RandomCorpus(5, {6, 12, 2, 1.0, 0.0});
  const auto segments = BuildSegments(corpus, std::nullopt);
  server.set_reply("说话人：人1号");
  {
    auto client = std::make_shared<LlmClient>(config);
    LlmBackend backend(client, std::make_shared<ResponseCache>(dir / "c.jsonl"),
                       "stub");
    backend.IdentifyAll(segments, PromptMode::ZeroShot());
    o.Check(client->requests_sent() == segments.size(), "first run requests");
  }
  const int before = server.requests();
  {
    auto client = std::make_shared<LlmClient>(config);
    LlmBackend backend(client, std::make_shared<ResponseCache>(dir / "c.jsonl"),
                       "stub");
    const auto outcomes = backend.IdentifyAll(segments, PromptMode::ZeroShot());
    for (const auto &out : outcomes) o.Check(out.ok(), "cached rerun failed");
    o.Check(client->requests_sent() == 0 && server.requests() == before,
            "cached rerun hit the network");
  }
  if (o.pass) {
    o.detail = "peak in-flight " + std::to_string(server.max_in_flight()) +
               "/3; backoff 250/750/2250 ms; cached rerun 0 requests";
  }
  return o;
}

}  // namespace
}  // namespace quoteattr

int main() {
  using quoteattr::Outcome;
  const std::pair<const char *, std::function<Outcome()>> criteria[] = {
      {"AC1", quoteattr::MetricOracle},
      {"AC2", quoteattr::KappaF1Oracle},
      {"AC3", quoteattr::CorpusStatistics},
      {"AC4", quoteattr::WindowExactness},
      {"AC5", quoteattr::SplitContract},
      {"AC6", quoteattr::RuleBaseline},
      {"AC7", quoteattr::PromptRoundTrip},
      {"AC8", quoteattr::NetworkConservation},
      {"AC9", quoteattr::PipelineReplay},
      {"AC10", quoteattr::LlmClientContract},
  };
  int failures = 0;
  for (const auto &[name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception &e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += !outcome.pass;
    std::printf("%s %s  %s\n", name, outcome.pass ? "PASS" : "FAIL",
                outcome.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
