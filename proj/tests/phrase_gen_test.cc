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

#include "openkv/phrase_gen.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "test_util.h"

namespace openkv {
namespace {

using testing::BuildSentence;
using testing::Tok;

std::set<std::string> Texts(const std::vector<NounPhrase> &phrases) {
  std::set<std::string> out;
  for (const NounPhrase &p : phrases) out.insert(p.text);
  return out;
}

ParsedSentence Refinance() {
  return BuildSentence(
      "In connection with the refinance we reduced the loan amount by $6.8 "
      "million.",
      {{"In", "ADP", 6, "prep"},        {"connection", "NOUN", 0, "pobj"},
       {"with", "ADP", 1, "prep"},      {"the", "DET", 4, "det"},
       {"refinance", "NOUN", 2, "pobj"}, {"we", "PRON", 6, "nsubj"},
       {"reduced", "VERB", 6, "ROOT"},  {"the", "DET", 9, "det"},
       {"loan", "NOUN", 9, "compound"}, {"amount", "NOUN", 6, "dobj"},
       {"by", "ADP", 6, "prep"},        {"$", "SYM", 13, "nmod"},
       {"6.8", "NUM", 13, "compound"},  {"million", "NUM", 10, "pobj"},
       {".", "PUNCT", 6, "punct"}},
      {{"$6.8 million", "MONEY"}});
}

TEST(SimplePhrasesTest, CompoundModifierPrecedesHead) {
  std::vector<NounPhrase> simple = SimplePhrases(Refinance());
  ASSERT_EQ(simple.size(), 1u);
  EXPECT_EQ(simple[0].text, "loan amount");
  EXPECT_EQ(simple[0].token_indices, (std::vector<int>{8, 9}));
  EXPECT_EQ(simple[0].head_index, 9);
  EXPECT_EQ(simple[0].kind, PhraseKind::kSimple);
}

TEST(SimplePhrasesTest, ModifiersKeepSentenceOrder) {
  ParsedSentence s = BuildSentence(
      "We repaid the principal amount outstanding.",
      {{"We", "PRON", 1, "nsubj"},        {"repaid", "VERB", 1, "ROOT"},
       {"the", "DET", 4, "det"},          {"principal", "ADJ", 4, "amod"},
       {"amount", "NOUN", 1, "dobj"},     {"outstanding", "ADJ", 4, "amod"},
       {".", "PUNCT", 1, "punct"}});
  std::vector<NounPhrase> simple = SimplePhrases(s);
  ASSERT_EQ(simple.size(), 1u);
  EXPECT_EQ(simple[0].text, "principal amount outstanding");
  EXPECT_EQ(simple[0].token_indices, (std::vector<int>{3, 4, 5}));
}

TEST(SimplePhrasesTest, NoNounsYieldsNothing) {
  ParsedSentence s = BuildSentence(
      "Run very quickly.", {{"Run", "VERB", 0, "ROOT"},
                            {"very", "ADV", 2, "advmod"},
                            {"quickly", "ADV", 0, "advmod"},
                            {".", "PUNCT", 0, "punct"}});
  EXPECT_TRUE(SimplePhrases(s).empty());
  EXPECT_TRUE(ComplexPhrases(s).empty());
  EXPECT_TRUE(AllPhrases(s).empty());
}

TEST(SimplePhrasesTest, BareNounIsNotAPhrase) {
  ParsedSentence s = BuildSentence(
      "Revenue grew.", {{"Revenue", "NOUN", 1, "nsubj"},
                        {"grew", "VERB", 1, "ROOT"},
                        {".", "PUNCT", 1, "punct"}});
  EXPECT_TRUE(SimplePhrases(s).empty());
}

TEST(SimplePhrasesTest, HeadOutsideArgumentPositionIsSkipped) {
  ParsedSentence s = BuildSentence(
      "Net revenue grew.", {{"Net", "ADJ", 1, "amod"},
                           {"revenue", "NOUN", 2, "appos"},
                           {"grew", "VERB", 2, "ROOT"},
                           {".", "PUNCT", 2, "punct"}});
  EXPECT_TRUE(SimplePhrases(s).empty());
}

TEST(SimplePhrasesTest, EntityTokenExcludesPhrase) {
  ParsedSentence s = BuildSentence(
      "We paid 2021 dividends.", {{"We", "PRON", 1, "nsubj"},
                                  {"paid", "VERB", 1, "ROOT"},
                                  {"2021", "NUM", 3, "compound"},
                                  {"dividends", "NOUN", 1, "dobj"},
                                  {".", "PUNCT", 1, "punct"}},
      {{"2021", "DATE"}});
  EXPECT_TRUE(SimplePhrases(s).empty());
}

TEST(ComplexPhrasesTest, PrepositionJoinsNounPhrases) {
  std::vector<NounPhrase> complex = ComplexPhrases(Refinance());
  ASSERT_EQ(complex.size(), 1u);
  EXPECT_EQ(complex[0].text, "connection with refinance");
  EXPECT_EQ(complex[0].head_index, 2);
  EXPECT_EQ(complex[0].token_indices, (std::vector<int>{1, 2, 4}));
}

TEST(ComplexPhrasesTest, AllNominalRightChildrenAreConcatenated) {
  ParsedSentence s = BuildSentence(
      "Fees of banks and trusts rose.",
      {{"Fees", "NOUN", 5, "nsubj"}, {"of", "ADP", 0, "prep"},
       {"banks", "NOUN", 1, "pobj"}, {"and", "CCONJ", 2, "cc"},
       {"trusts", "NOUN", 1, "pobj"}, {"rose", "VERB", 5, "ROOT"},
       {".", "PUNCT", 5, "punct"}});
  EXPECT_EQ(Texts(ComplexPhrases(s)),
            (std::set<std::string>{"Fees of banks trusts"}));
}

TEST(ComplexPhrasesTest, PrepositionUnderVerbIsSkipped) {
  ParsedSentence s = BuildSentence(
      "Sales rose in Europe.", {{"Sales", "NOUN", 1, "nsubj"},
                               {"rose", "VERB", 1, "ROOT"},
                               {"in", "ADP", 1, "prep"},
                               {"Europe", "PROPN", 2, "pobj"},
                               {".", "PUNCT", 1, "punct"}});
  EXPECT_TRUE(ComplexPhrases(s).empty());
}

TEST(AllPhrasesTest, SimpleBeforeComplexWithDedup) {
  // "tax rate" appears as both a subject phrase and the left part of a
  // complex phrase without a nominal right child.
  ParsedSentence s = BuildSentence(
      "Tax rate for 2020 fell.",
      {{"Tax", "NOUN", 1, "compound"}, {"rate", "NOUN", 4, "nsubj"},
       {"for", "ADP", 1, "prep"},      {"2020", "NUM", 2, "pobj"},
       {"fell", "VERB", 4, "ROOT"},    {".", "PUNCT", 4, "punct"}});
  std::vector<NounPhrase> all = AllPhrases(s);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0].text, "Tax rate");
  EXPECT_EQ(all[1].text, "Tax rate for");
  for (size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i].order_rank, i);
}

// An independent reading of the extraction rules, evaluated by scanning all
// token pairs rather than walking child lists.
struct OraclePhrase {
  std::string text;
  std::vector<int> indices;
  bool operator==(const OraclePhrase &) const = default;
};

bool OracleNominal(const std::string &pos) {
  return pos == "NOUN" || pos == "PROPN" || pos == "PRON";
}

// The head plus its modifiers, in sentence order.
std::set<int> OracleGroup(const std::vector<Tok> &toks, int head) {
  std::set<int> out = {head};
  for (int j = 0; j < static_cast<int>(toks.size()); ++j) {
    if (j == head || toks[j].head != head) continue;
    if (toks[j].pos == "ADJ" || toks[j].deprel == "compound") out.insert(j);
  }
  return out;
}

std::vector<OraclePhrase> Oracle(const std::vector<Tok> &toks,
                                 const std::vector<bool> &in_entity) {
  const int n = static_cast<int>(toks.size());
  std::vector<std::vector<int>> candidates;
  for (int i = 0; i < n; ++i) {
    const std::string &d = toks[i].deprel;
    bool arg = d == "nsubj" || d == "dobj" || d == "pobj";
    if (!OracleNominal(toks[i].pos) || !arg) continue;
    std::set<int> group = OracleGroup(toks, i);
    if (group.size() < 2) continue;
    candidates.emplace_back(group.begin(), group.end());
  }
  for (int p = 0; p < n; ++p) {
    int h = toks[p].head;
    if (toks[p].pos != "ADP" || h == p || !OracleNominal(toks[h].pos)) continue;
    std::set<int> left = OracleGroup(toks, h);
    std::vector<int> idx(left.begin(), left.end());
    idx.push_back(p);
    for (int r = p + 1; r < n; ++r) {
      if (toks[r].head != p || !OracleNominal(toks[r].pos)) continue;
      std::set<int> right = OracleGroup(toks, r);
      idx.insert(idx.end(), right.begin(), right.end());
    }
    bool increasing = true;
    for (size_t k = 1; k < idx.size(); ++k) increasing &= idx[k - 1] < idx[k];
    if (increasing) candidates.push_back(idx);
  }
  std::vector<OraclePhrase> out;
  for (const std::vector<int> &idx : candidates) {
    bool clean = true;
    for (int i : idx) clean &= !in_entity[i];
    if (!clean) continue;
    OraclePhrase p{"", idx};
    for (int i : idx) p.text += (p.text.empty() ? "" : " ") + toks[i].form;
    bool dup = false;
    for (const OraclePhrase &q : out) dup |= q.text == p.text;
    if (!dup) out.push_back(p);
  }
  return out;
}

TEST(PhraseOracleTest, RandomSmallTreesMatchBruteForce) {
  const std::vector<std::string> kPos = {"NOUN", "PROPN", "PRON", "ADJ",
                                         "ADP",  "VERB",  "DET",  "NUM"};
  const std::vector<std::string> kRel = {"nsubj", "dobj", "pobj", "compound",
                                         "amod",  "prep", "det"};
  std::mt19937 rng(20260415);
  int simple = 0, complex = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    int n = std::uniform_int_distribution<int>(1, 8)(rng);
    // Random tree: attach each node in a shuffled order to an earlier one.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Tok> toks(n);
    std::string text;
    for (int i = 0; i < n; ++i) {
      toks[i].form = "w" + std::to_string(i % 3);  // repeats exercise dedup
      toks[i].pos = kPos[rng() % kPos.size()];
      toks[i].deprel = kRel[rng() % kRel.size()];
      text += (i ? " " : "") + toks[i].form;
    }
    toks[order[0]].head = order[0];
    for (int k = 1; k < n; ++k) {
      toks[order[k]].head = order[rng() % k];
    }
    // Optional entity over a contiguous token run.
    std::vector<bool> in_entity(n, false);
    ParsedSentence s = BuildSentence(text, toks);
    if (rng() % 2 == 0) {
      int a = rng() % n;
      int b = a + static_cast<int>(rng() % (n - a));
      for (int i = a; i <= b; ++i) in_entity[i] = true;
      EntityMention m;
      m.sentence_id = s.sentence_id;
      m.char_start = s.tokens[a].char_start;
      m.char_end = s.tokens[b].char_end;
      m.text = std::string(CharIndex(text).substr(m.char_start, m.char_end));
      m.etype = EntityType::kCardinal;
      s.entities.push_back(m);
    }
    ASSERT_NO_THROW(ValidateSentence(s, "random", trial));

    std::vector<OraclePhrase> want = Oracle(toks, in_entity);
    std::vector<NounPhrase> got = AllPhrases(s);
    ASSERT_EQ(got.size(), want.size()) << "trial " << trial << ": " << text;
    for (size_t k = 0; k < got.size(); ++k) {
      EXPECT_EQ(got[k].text, want[k].text) << "trial " << trial;
      EXPECT_EQ(got[k].token_indices, want[k].indices) << "trial " << trial;
      EXPECT_EQ(got[k].order_rank, static_cast<int>(k));
      EXPECT_TRUE(std::is_sorted(got[k].token_indices.begin(),
                                 got[k].token_indices.end()));
      for (int i : got[k].token_indices) EXPECT_FALSE(in_entity[i]);
    }
    for (const NounPhrase &p : got) {
      ++(p.kind == PhraseKind::kSimple ? simple : complex);
    }
  }
  // The generator must actually exercise both extractors.
  EXPECT_GT(simple, 500);
  EXPECT_GT(complex, 200);
}

TEST(PhraseOracleTest, Deterministic) {
  ParsedSentence s = Refinance();
  EXPECT_EQ(AllPhrases(s), AllPhrases(s));
}

}  // namespace
}  // namespace openkv
