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

#include <gtest/gtest.h>

#include <set>

#include "fixtures.h"
#include "quoteattr/error.h"
#include "quoteattr/jsonl.h"

namespace quoteattr {
namespace {

using testing::Character;
using testing::PassageSegment;
using Names = std::vector<std::string>;

const std::vector<CharacterEntity> kFour = {
    Character("zs", "张三"), Character("ls", "李四", {"老四"}),
    Character("ww", "王五"), Character("zl", "赵六")};

Prediction Identify(const std::string &text, const std::string &quote,
               std::size_t nth = 0,
               const std::vector<CharacterEntity> &chars = kFour) {
  return RuleIdentify(PassageSegment(Lang::kZh, text, quote, nth, chars));
}

TEST(RuleBaseline, ClassicDialogueTurn) {
  const Prediction p = Identify(
      "陆庄主道：“这次来的是那个小王爷的师父，本事可比他大得多，因此我担了心。"
      "”黄蓉道：“咦，你怎么知道？”陆庄主道：",
      "“咦，你怎么知道？”", 0,
      {Character("lu", "陆乘风", {"陆庄主"}), Character("huangrong", "黄蓉")});
  EXPECT_EQ(p.speaker, "黄蓉");
  EXPECT_EQ(p.addressees, Names{"陆庄主"});
}

TEST(RuleBaseline, CrowdedScene) {
  const std::string text =
      "裘千仞一张老脸一忽儿青，一忽儿白，无地自容，他本想捏造黄药师的死讯，"
      "乘乱溜走，哪知自己炫人耳目的手法尽被朱聪拆穿，当即袍袖一拂，转身走出，"
      "梅超风反手抓住，将他往地下摔落，喝道：“你说我恩师逝世，到底是真是假？”"
      "这一摔劲力好大，裘千仞痛得哼哼唧唧，半晌说不出话来。黄蓉见那束干茅头上"
      "有烧焦了的痕迹，登时省悟，说道：“二师父，你把这束干茅点燃了藏在袖里，"
      "然后吸一口，喷一口。”江南六怪对黄蓉本来颇有芥蒂，但此刻齐心对付裘千仞，"
      "变成了敌忾同仇。";
  const Prediction p =
      Identify(text, "“你说我恩师逝世，到底是真是假？”", 0,
          {Character("qiu", "裘千仞"), Character("mei", "梅超风"),
           Character("zhu", "朱聪"), Character("huangrong", "黄蓉"),
           Character("six", "江南六怪"), Character("hys", "黄药师")});
  EXPECT_EQ(p.speaker, "梅超风");
  EXPECT_EQ(p.addressees, Names{"裘千仞"});
}

TEST(RuleBaseline, ReplyIsAddressedToPreviousSpeaker) {
  const Prediction p = Identify("张三道：“走吧。”李四道：“好。”", "“好。”");
  EXPECT_EQ(p.speaker, "李四");
  EXPECT_EQ(p.addressees, Names{"张三"});
}

TEST(RuleBaseline, OnlyCandidatesAreAnswers) {
  const Prediction p = Identify("李四坐在一旁。张三对店小二道：“来壶酒。”",
                           "“来壶酒。”");
  EXPECT_EQ(p.speaker, "张三");
  EXPECT_EQ(p.addressees, Names{"李四"});
}

TEST(RuleBaseline, PrecedingClauseWinsForSpeaker) {
  EXPECT_EQ(Identify("张三说：“走吧。”王五说。", "“走吧。”").speaker, "张三");
}

TEST(RuleBaseline, AddresseeFromImmediateContext) {
  EXPECT_EQ(Identify("李四站在门口。张三道：“走吧。”众人散去。王五坐着。",
                "“走吧。”")
                .addressees,
            Names{"李四"});
  EXPECT_EQ(Identify("张三道：“你来了。”李四道：“来了。”", "“你来了。”").addressees,
            Names{"李四"});
}

TEST(RuleBaseline, QuoteInternalMentionIsLastResort) {
  EXPECT_EQ(Identify("王五在屋外。张三道：“李四，你出去。”", "“李四，你出去。”")
                .addressees,
            Names{"王五"});
  EXPECT_EQ(Identify("张三道：“李四，你出去。”", "“李四，你出去。”").addressees,
            Names{"李四"});
}

TEST(RuleBaseline, OneAnswerPerCharacter) {
  const Prediction p = Identify("张三对李四道：“走吧，李四。”李四、老四点头。",
                           "“走吧，李四。”");
  EXPECT_EQ(p.speaker, "张三");
  EXPECT_EQ(p.addressees, Names{"李四"});
}

TEST(RuleBaseline, GroupAddressees) {
  const Prediction p = Identify("张三对李四、王五道：“走吧。”", "“走吧。”");
  EXPECT_EQ(p.speaker, "张三");
  EXPECT_EQ(p.addressees, (Names{"李四", "王五"}));
  EXPECT_EQ(Identify("张三道：“走吧。”李四和王五点头。", "“走吧。”").addressees,
            (Names{"李四", "王五"}));
}

TEST(RuleBaseline, MonologueHasNoAddressee) {
  const Prediction p = Identify("张三心想：“此事不妙。”李四走来。", "“此事不妙。”");
  EXPECT_EQ(p.speaker, "张三");
  EXPECT_TRUE(p.addressees.empty());
}

TEST(RuleBaseline, SingleCandidate) {
  const Prediction p = Identify("张三道：“好。”", "“好。”", 0,
                           {Character("zs", "张三")});
  EXPECT_EQ(p.speaker, "张三");
  EXPECT_TRUE(p.addressees.empty());
}

TEST(RuleBaseline, NoCandidates) {
  try {
    Identify("他道：“好。”", "“好。”", 0, {});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNoCandidate);
  }
}

TEST(RuleBaseline, EnglishCueAndAddressingMarker) {
  const Prediction p = RuleIdentify(PassageSegment(
      Lang::kEn, "\"Good morning,\" said Tom to Huck. Huck nodded.",
      "\"Good morning,\"", 0,
      {Character("tom", "Tom"), Character("huck", "Huck")}));
  EXPECT_EQ(p.speaker, "Tom");
  EXPECT_EQ(p.addressees, Names{"Huck"});
}

TEST(RuleBaseline, LexiconFromFile) {
  const auto dir = testing::TempDir("lexicon");
  WriteFile(dir / "lex.json", R"({"cue_verbs_zh": ["吼"]})");
  const RuleLexicon lexicon = RuleLexicon::FromFile(dir / "lex.json");
  EXPECT_EQ(lexicon.cue_verbs_zh, Names{"吼"});
  EXPECT_EQ(lexicon.monologue_zh, RuleLexicon{}.monologue_zh);
}

// Random corpus quotations: outputs are candidate surfaces, speaker never
// doubles as an addressee, and reruns agree.
TEST(RuleBaseline, OutputProperties) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Corpus corpus = testing::RandomCorpus(seed, {});
    const auto segments = BuildSegments(corpus, WindowSpec::Sentences(3, 3));
    for (const Segment &s : segments) {
      std::set<std::string> surfaces;
      std::map<std::string, std::string> owner;
      for (const CharacterEntity &c : s.candidates) {
        for (const std::string &a : c.aliases) {
          surfaces.insert(a);
          owner[a] = c.id;
        }
      }
      const Prediction p = RuleIdentify(s);
      ASSERT_EQ(p, RuleIdentify(s));
      ASSERT_TRUE(surfaces.contains(p.speaker)) << s.id() << " " << p.speaker;
      std::set<std::string> seen;
      for (const std::string &a : p.addressees) {
        ASSERT_TRUE(surfaces.contains(a)) << s.id();
        ASSERT_NE(owner[a], owner[p.speaker]) << s.id();
        ASSERT_TRUE(seen.insert(owner[a]).second) << s.id();
      }
    }
  }
}

// On the generated pattern "<S>对<A>道：" the rule is exact.
TEST(RuleBaseline, RecoversGeneratedSpeakers) {
  const Corpus corpus = testing::RandomCorpus(11, {});
  const auto segments = BuildSegments(corpus, WindowSpec::Sentences(1, 1));
  for (const Segment &s : segments) {
    const Prediction p = RuleIdentify(s);
    EXPECT_EQ(p.speaker, s.quotation.speaker.surface) << s.id();
    if (!s.quotation.addressees.empty()) {
      Names gold;
      for (const Mention &m : s.quotation.addressees) gold.push_back(m.surface);
      EXPECT_EQ(p.addressees, gold) << s.id();
    }
  }
}

}  // namespace
}  // namespace quoteattr
