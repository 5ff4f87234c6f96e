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

#include "openkv/association.h"

#include <cctype>
#include <optional>

namespace openkv {

using nlohmann::json;

namespace {

bool IsDelimiter(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u < 0x80 && !std::isalnum(u);
}

// Occurrence of `needle` in `hay` bounded by string ends or delimiters.
bool ContainsDelimited(const std::string &hay, const std::string &needle) {
  if (needle.empty()) return false;
  for (size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + 1)) {
    size_t end = pos + needle.size();
    bool left = pos == 0 || IsDelimiter(hay[pos - 1]) ||
                IsDelimiter(needle.front());
    bool right = end == hay.size() || IsDelimiter(hay[end]) ||
                 IsDelimiter(needle.back());
    if (left && right) return true;
  }
  return false;
}

struct ForwardResult {
  const Question *question;
  ReaderAnswer answer;
};

}  // namespace

std::string_view KeySourceName(KeySource source) {
  return source == KeySource::kForwardPhrase ? "FORWARD_PHRASE"
                                             : "REVERSE_ANSWER";
}

bool ContainsEntity(const ReaderAnswer &answer, const EntityMention &entity,
                    const std::string & /*context*/) {
  if (answer.empty) return false;
  if (answer.has_offsets()) {
    return answer.char_start <= entity.char_start &&
           entity.char_end <= answer.char_end;
  }
  return ContainsDelimited(answer.text, entity.text);
}

bool OverlapsAnyEntity(const ReaderAnswer &answer,
                       const ParsedSentence &sentence) {
  for (const EntityMention &e : sentence.entities) {
    if (answer.has_offsets()) {
      if (answer.char_start < e.char_end && e.char_start < answer.char_end) {
        return true;
      }
    } else if (answer.text.find(e.text) != std::string::npos ||
               e.text.find(answer.text) != std::string::npos) {
      return true;
    }
  }
  return false;
}

std::vector<ExtractionPair> Associate(const ParsedSentence &sentence,
                                      const std::vector<Question> &questions,
                                      const Reader &reader,
                                      SentenceDiagnostics *diagnostics) {
  SentenceDiagnostics local;
  SentenceDiagnostics &diag = diagnostics != nullptr ? *diagnostics : local;
  diag.document_id = sentence.document_id;
  diag.sentence_id = sentence.sentence_id;
  diag.entities = static_cast<int>(sentence.entities.size());

  auto ask = [&](const Question &q) -> std::optional<ReaderAnswer> {
    try {
      return reader.Answer(q, sentence);
    } catch (const ReaderError &e) {
      ++diag.reader_errors;
      diag.errors.push_back(q.text + ": " + e.what());
      return std::nullopt;
    }
  };

  std::vector<ExtractionPair> pairs;
  if (sentence.entities.empty()) return pairs;

  std::vector<ForwardResult> forward;
  for (const Question &q : questions) {
    if (q.direction != Direction::kForward || !q.source_phrase) continue;
    ++diag.forward_questions;
    std::optional<ReaderAnswer> answer = ask(q);
    if (!answer) continue;
    bool useful = false;
    for (const EntityMention &e : sentence.entities) {
      useful = useful || ContainsEntity(*answer, e, sentence.text);
    }
    if (!useful) {
      ++diag.forward_discards;
      continue;
    }
    forward.push_back({&q, std::move(*answer)});
  }

  for (const EntityMention &entity : sentence.entities) {
    const ForwardResult *best = nullptr;
    for (const ForwardResult &r : forward) {
      if (!ContainsEntity(r.answer, entity, sentence.text)) continue;
      if (best == nullptr || r.answer.confidence > best->answer.confidence ||
          (r.answer.confidence == best->answer.confidence &&
           r.question->source_phrase->order_rank <
               best->question->source_phrase->order_rank)) {
        best = &r;
      }
    }

    ExtractionPair pair;
    pair.document_id = sentence.document_id;
    pair.sentence_id = sentence.sentence_id;
    pair.entity = entity;
    if (best != nullptr) {
      pair.key = best->question->source_phrase->text;
      pair.key_source = KeySource::kForwardPhrase;
      pair.question_text = best->question->text;
      pair.answer_text = best->answer.text;
      pair.confidence = best->answer.confidence;
      pairs.push_back(std::move(pair));
      continue;
    }

    Question reverse = ReverseQuestion(entity);
    ++diag.reverse_questions;
    std::optional<ReaderAnswer> answer = ask(reverse);
    if (!answer) continue;
    if (answer->empty || answer->text.empty() ||
        OverlapsAnyEntity(*answer, sentence)) {
      ++diag.reverse_discards;
      continue;
    }
    pair.key = answer->text;
    pair.key_source = KeySource::kReverseAnswer;
    pair.question_text = reverse.text;
    pair.answer_text = answer->text;
    pair.confidence = answer->confidence;
    pairs.push_back(std::move(pair));
  }
  diag.pairs = static_cast<int>(pairs.size());
  return pairs;
}

json DiagnosticsToJson(const SentenceDiagnostics &d) {
  return {{"document_id", d.document_id},
          {"sentence_id", d.sentence_id},
          {"entities", d.entities},
          {"phrases", d.phrases},
          {"forward_questions", d.forward_questions},
          {"reverse_questions", d.reverse_questions},
          {"forward_discards", d.forward_discards},
          {"reverse_discards", d.reverse_discards},
          {"reader_errors", d.reader_errors},
          {"pairs", d.pairs},
          {"errors", d.errors}};
}

json PairToJson(const ExtractionPair &p) {
  return {{"document_id", p.document_id},
          {"sentence_id", p.sentence_id},
          {"entity", p.entity.text},
          {"entity_start", p.entity.char_start},
          {"entity_end", p.entity.char_end},
          {"etype", EntityTypeName(p.entity.etype)},
          {"key", p.key},
          {"key_source", KeySourceName(p.key_source)},
          {"question", p.question_text},
          {"answer", p.answer_text},
          {"confidence", p.confidence}};
}

ExtractionPair PairFromJson(const json &rec) {
  ExtractionPair p;
  auto id = [&](const char *key) {
    const json &v = rec.at(key);
    return v.is_string() ? v.get<std::string>()
                         : std::to_string(v.get<long long>());
  };
  p.document_id = id("document_id");
  p.sentence_id = id("sentence_id");
  p.entity.sentence_id = p.sentence_id;
  p.entity.text = rec.at("entity").get<std::string>();
  p.entity.char_start = rec.value("entity_start", -1);
  p.entity.char_end = rec.value("entity_end", -1);
  if (auto type = ParseEntityType(rec.value("etype", std::string("MONEY")))) {
    p.entity.etype = *type;
  }
  p.key = rec.at("key").get<std::string>();
  p.key_source = rec.value("key_source", std::string()) == "REVERSE_ANSWER"
                     ? KeySource::kReverseAnswer
                     : KeySource::kForwardPhrase;
  p.question_text = rec.value("question", std::string());
  p.answer_text = rec.value("answer", std::string());
  p.confidence = rec.value("confidence", 0.0);
  return p;
}

}  // namespace openkv
