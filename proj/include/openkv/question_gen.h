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

#ifndef OPENKV_QUESTION_GEN_H_
#define OPENKV_QUESTION_GEN_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "openkv/corpus.h"
#include "openkv/phrase_gen.h"

namespace openkv {

enum class Direction { kForward, kReverse };

std::string_view DirectionName(Direction direction);

// A question posed to the reader. Forward questions ask about a phrase and
// expect an entity back; reverse questions ask about an entity and expect a
// description back.
struct Question {
  std::string text;  // "<prefix> <source text> ?"
  Direction direction = Direction::kForward;
  std::optional<NounPhrase> source_phrase;     // forward only
  std::optional<EntityMention> source_entity;  // reverse only
  EntityType target_etype = EntityType::kMoney;

  bool operator==(const Question &) const = default;
};

// DATE, TIME -> "When is"; MONEY -> "How much is"; everything else
// -> "What is".
std::string_view QuestionPrefix(EntityType type);

// One question per (entity type present in the sentence, phrase), ordered by
// type then phrase rank, duplicate texts dropped.
std::vector<Question> ForwardQuestions(const ParsedSentence &sentence,
                                       const std::vector<NounPhrase> &phrases);

// "What is <entity> ?"
Question ReverseQuestion(const EntityMention &entity);

}  // namespace openkv

#endif  // OPENKV_QUESTION_GEN_H_
