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

#ifndef OPENKV_READER_H_
#define OPENKV_READER_H_

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "openkv/corpus.h"
#include "openkv/question_gen.h"

namespace openkv {

// A span answer from an extractive reader. Offsets are characters into the
// context sentence, -1 when the backend could not localize the span.
struct ReaderAnswer {
  std::string text;
  double confidence = 0.0;
  int char_start = -1;
  int char_end = -1;
  bool empty = true;

  bool has_offsets() const { return char_start >= 0 && char_end >= 0; }

  static ReaderAnswer Abstain() { return ReaderAnswer(); }

  bool operator==(const ReaderAnswer &) const = default;
};

// Transport or protocol failure. Abstentions are not errors.
class ReaderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ReaderKind { kFixture, kNearestEntity, kRemote };

std::optional<ReaderKind> ParseReaderKind(std::string_view name);
std::string_view ReaderKindName(ReaderKind kind);

struct ReaderSpec {
  ReaderKind kind = ReaderKind::kNearestEntity;
  std::string endpoint;      // kRemote, e.g. http://localhost:8750
  std::string fixture_path;  // kFixture
  int timeout_ms = 30000;
  int retries = 2;
  int backoff_ms = 200;     // doubled after every failed attempt
  int max_in_flight = 8;

  // Throws std::invalid_argument when the kind-specific field is missing.
  void Validate() const;
};

class Reader {
 public:
  virtual ~Reader() = default;

  // Answers `question` against `context.text`. Safe to call concurrently.
  // Throws ReaderError on transport failure; returns an empty answer when
  // the backend abstains.
  virtual ReaderAnswer Answer(const Question &question,
                              const ParsedSentence &context) const = 0;

  // Verifies the backend is reachable before a run. Throws ReaderError.
  virtual void Preflight() const {}
};

std::unique_ptr<Reader> MakeReader(const ReaderSpec &spec);

// Ensures a non-empty answer's offsets point at its text. Offsets that do not
// match are replaced by the first occurrence of the text in the context, or
// -1/-1 when it does not occur.
void ReconcileOffsets(const std::string &context, ReaderAnswer *answer);

// Exact lookup table keyed by (question text, context text).
class FixtureReader : public Reader {
 public:
  struct Row {
    std::string question;
    std::string context;
    ReaderAnswer answer;
  };

  explicit FixtureReader(std::vector<Row> rows);

  // Reads JSONL rows {"question","context","answer","score","start","end"}.
  static std::unique_ptr<FixtureReader> FromFile(const std::string &path);

  ReaderAnswer Answer(const Question &question,
                      const ParsedSentence &context) const override;

 private:
  std::map<std::pair<std::string, std::string>, ReaderAnswer> table_;
};

// Deterministic stand-in reader for smoke and property tests. Forward
// questions are answered with the entity of the question's target type that
// lies closest to the phrase; reverse questions with the source text of the
// phrase closest to the entity. Confidence is 1 / (1 + token distance).
class NearestEntityReader : public Reader {
 public:
  ReaderAnswer Answer(const Question &question,
                      const ParsedSentence &context) const override;
};

// Token distance between two token index sets: the smallest |i - j|.
int TokenDistance(const std::vector<int> &a, const std::vector<int> &b);

}  // namespace openkv

#endif  // OPENKV_READER_H_
