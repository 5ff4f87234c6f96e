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

#include <algorithm>
#include <set>
#include <unordered_set>

namespace openkv {

std::string_view DirectionName(Direction direction) {
  return direction == Direction::kForward ? "FORWARD" : "REVERSE";
}

std::string_view QuestionPrefix(EntityType type) {
  switch (type) {
    case EntityType::kDate:
    case EntityType::kTime:
      return "When is";
    case EntityType::kMoney:
      return "How much is";
    case EntityType::kPercent:
    case EntityType::kCardinal:
    case EntityType::kOrdinal:
    case EntityType::kQuantity:
      return "What is";
  }
  return "What is";
}

std::vector<Question> ForwardQuestions(const ParsedSentence &sentence,
                                       const std::vector<NounPhrase> &phrases) {
  std::set<EntityType> present;
  for (const EntityMention &e : sentence.entities) present.insert(e.etype);

  std::vector<const NounPhrase *> ranked;
  for (const NounPhrase &p : phrases) ranked.push_back(&p);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const NounPhrase *a, const NounPhrase *b) {
                     return a->order_rank < b->order_rank;
                   });

  std::vector<Question> questions;
  std::unordered_set<std::string> seen;
  // std::set iterates in enum declaration order.
  for (EntityType type : present) {
    for (const NounPhrase *p : ranked) {
      const NounPhrase &phrase = *p;
      Question q;
      q.text = std::string(QuestionPrefix(type)) + " " + phrase.text + " ?";
      if (!seen.insert(q.text).second) continue;
      q.direction = Direction::kForward;
      q.source_phrase = phrase;
      q.target_etype = type;
      questions.push_back(std::move(q));
    }
  }
  return questions;
}

Question ReverseQuestion(const EntityMention &entity) {
  Question q;
  q.text = "What is " + entity.text + " ?";
  q.direction = Direction::kReverse;
  q.source_entity = entity;
  q.target_etype = entity.etype;
  return q;
}

}  // namespace openkv
