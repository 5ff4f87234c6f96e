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

#include "openkv/reader.h"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <fstream>

#include "openkv/phrase_gen.h"
#include "openkv/utf8.h"
#include "reader_internal.h"

namespace openkv {

using nlohmann::json;

std::optional<ReaderKind> ParseReaderKind(std::string_view name) {
  if (name == "fixture") return ReaderKind::kFixture;
  if (name == "nearest" || name == "nearest-entity") {
    return ReaderKind::kNearestEntity;
  }
  if (name == "remote") return ReaderKind::kRemote;
  return std::nullopt;
}

std::string_view ReaderKindName(ReaderKind kind) {
  switch (kind) {
    case ReaderKind::kFixture: return "fixture";
    case ReaderKind::kNearestEntity: return "nearest";
    case ReaderKind::kRemote: return "remote";
  }
  return "nearest";
}

void ReaderSpec::Validate() const {
  if (kind == ReaderKind::kRemote && endpoint.empty()) {
    throw std::invalid_argument("remote reader requires an endpoint");
  }
  if (kind == ReaderKind::kFixture && fixture_path.empty()) {
    throw std::invalid_argument("fixture reader requires a fixture path");
  }
  if (timeout_ms <= 0 || retries < 0 || backoff_ms < 0 || max_in_flight < 1) {
    throw std::invalid_argument("invalid reader timing parameters");
  }
}

std::unique_ptr<Reader> MakeReader(const ReaderSpec &spec) {
  spec.Validate();
  switch (spec.kind) {
    case ReaderKind::kFixture:
      return FixtureReader::FromFile(spec.fixture_path);
    case ReaderKind::kNearestEntity:
      return std::make_unique<NearestEntityReader>();
    case ReaderKind::kRemote:
      return MakeRemoteReader(spec);
  }
  return nullptr;
}

void ReconcileOffsets(const std::string &context, ReaderAnswer *answer) {
  if (answer->empty || answer->text.empty()) {
    *answer = ReaderAnswer::Abstain();
    return;
  }
  CharIndex index(context);
  if (answer->has_offsets() &&
      index.valid_range(answer->char_start, answer->char_end) &&
      index.substr(answer->char_start, answer->char_end) == answer->text) {
    return;
  }
  if (auto found = FindChars(context, answer->text)) {
    answer->char_start = *found;
    answer->char_end = *found + CharLength(answer->text);
  } else {
    answer->char_start = -1;
    answer->char_end = -1;
  }
}

FixtureReader::FixtureReader(std::vector<Row> rows) {
  for (Row &row : rows) {
    ReconcileOffsets(row.context, &row.answer);
    table_.insert_or_assign({std::move(row.question), std::move(row.context)},
                            std::move(row.answer));
  }
}

std::unique_ptr<FixtureReader> FixtureReader::FromFile(
    const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ReaderError("cannot open reader fixture " + path);
  std::vector<Row> rows;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      json rec = json::parse(raw);
      Row row;
      row.question = rec.at("question").get<std::string>();
      row.context = rec.at("context").get<std::string>();
      row.answer.text = rec.value("answer", std::string());
      row.answer.confidence = rec.value("score", 0.0);
      row.answer.char_start = rec.value("start", -1);
      row.answer.char_end = rec.value("end", -1);
      row.answer.empty = rec.value("empty", row.answer.text.empty());
      rows.push_back(std::move(row));
    } catch (const json::exception &e) {
      throw ReaderError(path + ":" + std::to_string(line) + ": " + e.what());
    }
  }
  return std::make_unique<FixtureReader>(std::move(rows));
}

ReaderAnswer FixtureReader::Answer(const Question &question,
                                   const ParsedSentence &context) const {
  auto it = table_.find({question.text, context.text});
  if (it == table_.end()) return ReaderAnswer::Abstain();
  return it->second;
}

int TokenDistance(const std::vector<int> &a, const std::vector<int> &b) {
  int best = INT_MAX;
  for (int i : a) {
    for (int j : b) best = std::min(best, std::abs(i - j));
  }
  return best;
}

namespace {

std::vector<int> TokenSpan(const ParsedSentence &s, const EntityMention &e) {
  std::vector<int> span;
  for (const Token &t : s.tokens) {
    if (t.char_start < e.char_end && e.char_start < t.char_end) {
      span.push_back(t.index);
    }
  }
  return span;
}

}  // namespace

ReaderAnswer NearestEntityReader::Answer(const Question &question,
                                         const ParsedSentence &context) const {
  ReaderAnswer best;
  int best_distance = INT_MAX;

  if (question.direction == Direction::kForward) {
    if (!question.source_phrase) return best;
    const std::vector<int> &source = question.source_phrase->token_indices;
    bool typed = std::any_of(
        context.entities.begin(), context.entities.end(),
        [&](const EntityMention &e) { return e.etype == question.target_etype; });
    for (const EntityMention &e : context.entities) {
      if (typed && e.etype != question.target_etype) continue;
      int d = TokenDistance(source, TokenSpan(context, e));
      if (d < best_distance) {
        best_distance = d;
        best.text = e.text;
        best.char_start = e.char_start;
        best.char_end = e.char_end;
        best.empty = false;
      }
    }
  } else {
    if (!question.source_entity) return best;
    std::vector<int> source = TokenSpan(context, *question.source_entity);
    CharIndex index(context.text);
    for (const NounPhrase &p : AllPhrases(context)) {
      int d = TokenDistance(source, p.token_indices);
      if (d < best_distance) {
        best_distance = d;
        int first = context.tokens[p.token_indices.front()].char_start;
        int last = context.tokens[p.token_indices.back()].char_end;
        best.text = std::string(index.substr(first, last));
        best.char_start = first;
        best.char_end = last;
        best.empty = false;
      }
    }
  }
  if (!best.empty) best.confidence = 1.0 / (1.0 + best_distance);
  return best;
}

}  // namespace openkv
