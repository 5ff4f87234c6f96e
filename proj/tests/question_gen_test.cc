// Copyright 2026 The OpenKV Authors.
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

#include "openkv/question_gen.h"

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "test_util.h"

namespace openkv {
namespace {

using testing::DataPath;

std::vector<std::string> Texts(const std::vector<Question> &qs) {
  std::vector<std::string> out;
  for (const Question &q : qs) out.push_back(q.text);
  return out;
}

const ParsedSentence &Lending(int k) {
  static const std::vector<Document> docs =
      LoadCorpus(DataPath("lending.jsonl"), CorpusFormat::kParsedJsonl);
  return docs[0].sentences[k];
}

TEST(QuestionPrefixTest, ByEntityType) {
  EXPECT_EQ(QuestionPrefix(EntityType::kMoney), "How much is");
  EXPECT_EQ(QuestionPrefix(EntityType::kPercent), "What is");
  EXPECT_EQ(QuestionPrefix(EntityType::kDate), "When is");
  EXPECT_EQ(QuestionPrefix(EntityType::kTime), "When is");
  EXPECT_EQ(QuestionPrefix(EntityType::kCardinal), "What is");
  EXPECT_EQ(QuestionPrefix(EntityType::kOrdinal), "What is");
  EXPECT_EQ(QuestionPrefix(EntityType::kQuantity), "What is");
}

TEST(ForwardQuestionsTest, MoneySentenceAsksOnePerPhrase) {
  const ParsedSentence &s = Lending(0);
  std::vector<Question> qs = ForwardQuestions(s, AllPhrases(s));
  EXPECT_EQ(Texts(qs),
            (std::vector<std::string>{
                "How much is borrowing capacity ?",
                "How much is revolving credit loan ?",
                "How much is available credit facility ?",
                "How much is borrowing capacity on revolving credit loan ?"}));
  for (const Question &q : qs) {
    ASSERT_TRUE(q.source_phrase.has_value());
    EXPECT_FALSE(q.source_entity.has_value());
    EXPECT_EQ(q.direction, Direction::kForward);
    EXPECT_EQ(q.target_etype, EntityType::kMoney);
    EXPECT_NE(q.text.find(q.source_phrase->text), std::string::npos);
  }
}

TEST(ForwardQuestionsTest, MixedTypesOrderedByTypeThenRank) {
  const ParsedSentence &s = Lending(1);
  std::vector<Question> qs = ForwardQuestions(s, AllPhrases(s));
  EXPECT_EQ(Texts(qs), (std::vector<std::string>{"What is loan balance ?",
                                                 "When is loan balance ?"}));
  EXPECT_EQ(qs[0].target_etype, EntityType::kPercent);
  EXPECT_EQ(qs[1].target_etype, EntityType::kDate);
}

TEST(ForwardQuestionsTest, RankOrderWinsOverInputOrder) {
  const ParsedSentence &s = Lending(0);
  std::vector<NounPhrase> phrases = AllPhrases(s);
  std::reverse(phrases.begin(), phrases.end());
  EXPECT_EQ(ForwardQuestions(s, phrases), ForwardQuestions(s, AllPhrases(s)));
}

TEST(ForwardQuestionsTest, SharedPrefixIsAskedOnce) {
  ParsedSentence s = Lending(1);
  s.entities[0].etype = EntityType::kCardinal;  // now CARDINAL + PERCENT
  std::vector<Question> qs = ForwardQuestions(s, AllPhrases(s));
  EXPECT_EQ(Texts(qs), (std::vector<std::string>{"What is loan balance ?"}));
}

TEST(ForwardQuestionsTest, NoEntitiesOrNoPhrases) {
  ParsedSentence s = Lending(0);
  std::vector<NounPhrase> phrases = AllPhrases(s);
  EXPECT_TRUE(ForwardQuestions(s, {}).empty());
  s.entities.clear();
  EXPECT_TRUE(ForwardQuestions(s, phrases).empty());
}

TEST(ReverseQuestionTest, WrapsEntityText) {
  const ParsedSentence &s = Lending(1);
  Question q = ReverseQuestion(s.entities[0]);
  EXPECT_EQ(q.text, "What is 13-24 or 25-36 ?");
  EXPECT_EQ(q.direction, Direction::kReverse);
  EXPECT_EQ(q.source_entity, s.entities[0]);
  EXPECT_FALSE(q.source_phrase.has_value());
  EXPECT_EQ(ReverseQuestion(s.entities[1]).text, "What is 2% and 1% ?");

  EntityMention zero;
  zero.text = "$0";
  EXPECT_EQ(ReverseQuestion(zero).text, "What is $0 ?");
}

}  // namespace
}  // namespace openkv
