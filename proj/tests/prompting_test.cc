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

#include <gtest/gtest.h>

#include <random>

#include "fixtures.h"
#include "quoteattr/error.h"
#include "quoteattr/jsonl.h"
#include "quoteattr/prompting.h"

namespace quoteattr {
namespace {

ErrorKind KindOf(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kInput;
}

Passage MakePassage(const std::string &text) {
  return {text, {0, 0}, {0, 0}};
}

bool SameAnswer(const Prediction &a, const Prediction &b) {
  return a.speaker == b.speaker && a.addressees == b.addressees;
}

TEST(Render, ZeroShotContainsPassageQuotationAndInstruction) {
  const PromptTemplate tmpl = PromptTemplate::Default(Lang::kEn);
  const std::string prompt =
      RenderZeroShot(tmpl, MakePassage("THE-PASSAGE"), "THE-QUOTE");
  EXPECT_NE(prompt.find("THE-PASSAGE"), std::string::npos);
  EXPECT_NE(prompt.find("THE-QUOTE"), std::string::npos);
  EXPECT_NE(prompt.find(tmpl.answer_format_instruction), std::string::npos);
  EXPECT_EQ(prompt.rfind(tmpl.answer_format_instruction),
            prompt.size() - tmpl.answer_format_instruction.size());
}

TEST(Render, EmptyPassageStillRenders) {
  const PromptTemplate tmpl = PromptTemplate::Default(Lang::kZh);
  const std::string prompt = RenderZeroShot(tmpl, MakePassage(""), "“走吧。”");
  EXPECT_NE(prompt.find("文章：\n"), std::string::npos);
}

TEST(Render, IsByteIdenticalAcrossCalls) {
  const PromptTemplate tmpl = PromptTemplate::Default(Lang::kZh);
  EXPECT_EQ(RenderZeroShot(tmpl, MakePassage("甲"), "乙"),
            RenderZeroShot(tmpl, MakePassage("甲"), "乙"));
}

TEST(Template, MissingQuotationPlaceholderIsTemplateError) {
  PromptTemplate tmpl = PromptTemplate::Default(Lang::kEn);
  tmpl.question_pattern = "Passage: {context}\nWho speaks?";
  EXPECT_EQ(KindOf([&] { tmpl.Validate(); }), ErrorKind::kTemplate);
  tmpl.question_pattern = "{context} {quotation} {speaker}";
  EXPECT_EQ(KindOf([&] { tmpl.Validate(); }), ErrorKind::kTemplate);
}

TEST(Template, FromFileOverridesFieldsAndValidates) {
  const auto dir = testing::TempDir("template");
  WriteFile(dir / "ok.json",
            R"({"lang": "zh", "preamble": "请阅读。"})");
  const PromptTemplate tmpl = PromptTemplate::FromFile(dir / "ok.json");
  EXPECT_EQ(tmpl.lang, Lang::kZh);
  EXPECT_EQ(tmpl.preamble, "请阅读。");
  EXPECT_EQ(tmpl.question_pattern,
            PromptTemplate::Default(Lang::kZh).question_pattern);

  WriteFile(dir / "bad.json", R"({"question_pattern": "{context} {oops}"})");
  EXPECT_EQ(KindOf([&] { PromptTemplate::FromFile(dir / "bad.json"); }),
            ErrorKind::kTemplate);
}

TEST(FillPattern, EscapesAndUnknownPlaceholders) {
  EXPECT_EQ(FillPattern("{{a}} {a}", {{"a", "x"}}), "{a} x");
  EXPECT_EQ(KindOf([] { FillPattern("{b}", {{"a", "x"}}); }),
            ErrorKind::kTemplate);
  EXPECT_EQ(KindOf([] { FillPattern("{a", {{"a", "x"}}); }),
            ErrorKind::kTemplate);
}

TEST(Render, FewShotPutsExemplarAnswersBeforeQuestion) {
  const PromptTemplate tmpl = PromptTemplate::Default(Lang::kEn);
  const std::vector<Exemplar> exemplars = {
      {"P1", "Q1", "Alice", {"Bob"}},
      {"P2", "Q2", "Carol", {"Dan", "Eve"}}};
  const std::string prompt =
      RenderFewShot(tmpl, exemplars, MakePassage("P3"), "Q3");
  const std::size_t a1 = prompt.find("Speaker: \"Alice\", Addressee: \"Bob\"");
  const std::size_t a2 =
      prompt.find("Speaker: \"Carol\", Addressee: \"Dan, Eve\"");
  const std::size_t q = prompt.find("Passage: P3");
  ASSERT_NE(a1, std::string::npos);
  ASSERT_NE(a2, std::string::npos);
  ASSERT_NE(q, std::string::npos);
  EXPECT_LT(a1, a2);
  EXPECT_LT(a2, q);
}

TEST(Render, FewShotChineseJoinsAddresseesWithEnumerationComma) {
  const PromptTemplate tmpl = PromptTemplate::Default(Lang::kZh);
  const std::vector<Exemplar> exemplars = {
      {"文", "“走。”", "洪七公", {"郭靖", "黄蓉"}}};
  const std::string prompt =
      RenderFewShot(tmpl, exemplars, MakePassage("文"), "“走。”");
  EXPECT_NE(prompt.find("听话人：“郭靖、黄蓉”"), std::string::npos);
  // An exemplar identical to the query is kept.
  EXPECT_NE(prompt.find("文章：文", prompt.find("文章：文") + 1),
            std::string::npos);
}

TEST(Render, FewShotWithoutExemplarsIsConfigError) {
  EXPECT_EQ(KindOf([] {
              RenderFewShot(PromptTemplate::Default(Lang::kEn), {},
                            MakePassage("P"), "Q");
            }),
            ErrorKind::kConfig);
}

TEST(Parse, EnglishAnswer) {
  const Prediction p =
      ParsePrediction("Speaker: \"he\", Addressee: \"Kuzmitchov\"", Lang::kEn);
  EXPECT_EQ(p.speaker, "he");
  EXPECT_EQ(p.addressees, std::vector<std::string>{"Kuzmitchov"});
  EXPECT_EQ(p.raw_response, "Speaker: \"he\", Addressee: \"Kuzmitchov\"");
}

TEST(Parse, ChineseWithoutSeparators) {
  const Prediction p = ParsePrediction("说话人：黄蓉 听话人：陆庄主", Lang::kZh);
  EXPECT_EQ(p.speaker, "黄蓉");
  EXPECT_EQ(p.addressees, std::vector<std::string>{"陆庄主"});
}

TEST(Parse, ReorderedFieldsAndMixedLabels) {
  const Prediction p = ParsePrediction(
      "Addressee: 黄蓉、江南六怪、朱聪 说话人: 裘千仞", Lang::kZh);
  EXPECT_EQ(p.speaker, "裘千仞");
  EXPECT_EQ(p.addressees,
            (std::vector<std::string>{"黄蓉", "江南六怪", "朱聪"}));
}

TEST(Parse, TableAnswerStrings) {
  struct Case {
    const char *text;
    Lang lang;
    const char *speaker;
    std::vector<std::string> addressees;
  };
  const Case cases[] = {
      {"Speaker: \"he\",  Addressee: \"Kuzmitchov\"", Lang::kEn, "he",
       {"Kuzmitchov"}},
      {"Speaker: \"黄蓉\" ,  Addressee： \"陆庄主\"", Lang::kZh, "黄蓉",
       {"陆庄主"}},
      {"Speaker: \"梅超风\" ,  Addressee： \"裘千仞\"", Lang::kZh, "梅超风",
       {"裘千仞"}},
      {"Speaker: \"Moisey Moisevitch\",  Addressee: \"Yegorushka\"", Lang::kEn,
       "Moisey Moisevitch", {"Yegorushka"}},
      {"Speaker: \"裘千仞\" ,  Addressee： \"黄蓉、江南六怪、朱聪\"", Lang::kZh,
       "裘千仞", {"黄蓉", "江南六怪", "朱聪"}},
  };
  for (const Case &c : cases) {
    const Prediction p = ParsePrediction(c.text, c.lang);
    EXPECT_EQ(p.speaker, c.speaker) << c.text;
    EXPECT_EQ(p.addressees, c.addressees) << c.text;
  }
}

TEST(Parse, SurroundingProseAndFirstOccurrenceWins) {
  const Prediction p = ParsePrediction(
      "Sure! Here it is.\nSpeaker: Tom\nAddressee: Huck and Joe\n"
      "Speaker: Becky",
      Lang::kEn);
  EXPECT_EQ(p.speaker, "Tom");
  EXPECT_EQ(p.addressees, (std::vector<std::string>{"Huck", "Joe"}));
}

TEST(Parse, MissingFieldYieldsEmptyValue) {
  const Prediction p = ParsePrediction("说话人：“郭靖”", Lang::kZh);
  EXPECT_EQ(p.speaker, "郭靖");
  EXPECT_TRUE(p.addressees.empty());
}

TEST(Parse, NoLabelsIsParseErrorKeepingResponse) {
  try {
    ParsePrediction("I cannot tell.", Lang::kEn);
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.raw(), "I cannot tell.");
  }
}

// parse(format(p)) == p, plus reordered and full-width variants.
TEST(Parse, RoundTripProperty) {
  const std::vector<std::string> en_names = {
      "Tom", "Huck", "he", "Moisey Moisevitch", "Father Christopher",
      "Olga Ivanovna", "Mr. Smith", "Kuzmitchov", "the old man"};
  const std::vector<std::string> zh_names = {
      "郭靖", "黄蓉", "陆庄主", "江南六怪", "梅超风", "裘千仞", "洪七公",
      "朱聪", "他"};
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 2000; ++trial) {
    const Lang lang = trial % 2 ? Lang::kZh : Lang::kEn;
    const auto &names = lang == Lang::kZh ? zh_names : en_names;
    Prediction p;
    p.speaker = names[rng() % names.size()];
    const std::size_t k = rng() % 4;
    std::vector<std::string> pool = names;
    std::shuffle(pool.begin(), pool.end(), rng);
    p.addressees.assign(pool.begin(), pool.begin() + k);

    const std::string canonical = FormatAnswer(p, lang);
    ASSERT_TRUE(SameAnswer(ParsePrediction(canonical, lang), p)) << canonical;

    const std::string joined = JoinAddressees(p.addressees, lang);
    std::string reordered;
    if (lang == Lang::kZh) {
      reordered = "听话人：「" + joined + "」；说话人：「" + p.speaker + "」。";
    } else {
      reordered = "Addressee: '" + joined + "'; Speaker: '" + p.speaker + "'.";
    }
    ASSERT_TRUE(SameAnswer(ParsePrediction(reordered, lang), p)) << reordered;

    const std::string half = lang == Lang::kZh
                                 ? "说话人: \"" + p.speaker + "\", 听话人: \"" +
                                       joined + "\""
                                 : "SPEAKER：" + p.speaker + "，ADDRESSEE：" +
                                       joined;
    if (lang == Lang::kEn && p.addressees.size() > 1) continue;
    ASSERT_TRUE(SameAnswer(ParsePrediction(half, lang), p)) << half;
  }
}

}  // namespace
}  // namespace quoteattr
