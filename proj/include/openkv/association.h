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

#ifndef OPENKV_ASSOCIATION_H_
#define OPENKV_ASSOCIATION_H_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "openkv/corpus.h"
#include "openkv/phrase_gen.h"
#include "openkv/question_gen.h"
#include "openkv/reader.h"

namespace openkv {

enum class KeySource { kForwardPhrase, kReverseAnswer };

std::string_view KeySourceName(KeySource source);

// An entity (value) with the description (key) chosen for it.
struct ExtractionPair {
  std::string document_id;
  std::string sentence_id;
  EntityMention entity;
  std::string key;
  KeySource key_source = KeySource::kForwardPhrase;
  std::string question_text;
  std::string answer_text;
  double confidence = 0.0;

  bool operator==(const ExtractionPair &) const = default;
};

// Per-sentence counters. Reader errors are also listed verbatim.
struct SentenceDiagnostics {
  std::string document_id;
  std::string sentence_id;
  int entities = 0;
  int phrases = 0;
  int forward_questions = 0;
  int reverse_questions = 0;
  int forward_discards = 0;  // answers containing no entity of the sentence
  int reverse_discards = 0;  // empty answers or answers overlapping entities
  int reader_errors = 0;
  int pairs = 0;
  std::vector<std::string> errors;
};

nlohmann::json DiagnosticsToJson(const SentenceDiagnostics &d);

// True iff the entity lies inside the answer: by character span when the
// answer is localized, otherwise as a delimited substring of the answer text.
bool ContainsEntity(const ReaderAnswer &answer, const EntityMention &entity,
                    const std::string &context);

// True iff the answer overlaps any entity mention of the sentence, including
// fragments of one ("2" out of "2% and 1%").
bool OverlapsAnyEntity(const ReaderAnswer &answer,
                       const ParsedSentence &sentence);

// Chooses a key for every entity of the sentence:
//  1. every forward question is asked once;
//  2. an entity takes the phrase of the highest-confidence forward answer
//     that contains it (ties go to the lowest phrase rank), so one answer
//     can key several entities;
//  3. remaining entities are asked "What is <entity> ?" and the answer
//     becomes the key unless it is empty or overlaps an entity;
//  4. otherwise the entity gets no pair.
// Reader errors discard the question and are counted in `diagnostics`.
std::vector<ExtractionPair> Associate(const ParsedSentence &sentence,
                                      const std::vector<Question> &questions,
                                      const Reader &reader,
                                      SentenceDiagnostics *diagnostics);

// Extraction JSONL record. "entity_start"/"entity_end" locate the entity in
// its sentence so evaluation can join on position.
nlohmann::json PairToJson(const ExtractionPair &pair);
ExtractionPair PairFromJson(const nlohmann::json &rec);

}  // namespace openkv

#endif  // OPENKV_ASSOCIATION_H_
