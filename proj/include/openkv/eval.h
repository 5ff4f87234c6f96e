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

#ifndef OPENKV_EVAL_H_
#define OPENKV_EVAL_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "openkv/association.h"
#include "openkv/corpus.h"

namespace openkv {

enum class MatchKind { kCorrect, kPartial, kIncorrect };

std::string_view MatchKindName(MatchKind kind);

struct MatchResult {
  std::string document_id;
  std::string sentence_id;
  std::string entity_text;
  int entity_char_start = 0;
  std::vector<std::string> gold_keys;
  std::optional<std::string> predicted_key;
  MatchKind kind = MatchKind::kIncorrect;
  double overlap = 0.0;
};

// Lower-cases, deletes ASCII punctuation and splits on whitespace.
std::vector<std::string> MatchTokens(std::string_view text);

// Scores a prediction against every gold key and keeps the best:
//   CORRECT    normalized token sequences are equal;
//   PARTIAL    |multiset intersection| / |gold tokens| > 0.5;
//   INCORRECT  otherwise, or when there is no prediction.
MatchResult ClassifyMatch(const std::vector<std::string> &gold_keys,
                          const std::optional<std::string> &predicted_key);

struct MatchCounts {
  long correct = 0;
  long partial = 0;
  long incorrect = 0;

  long total() const { return correct + partial + incorrect; }
  void Add(MatchKind kind);
  MatchCounts &operator+=(const MatchCounts &other);
  bool operator==(const MatchCounts &) const = default;
};

// (correct + 0.5 * partial) / total; nullopt when there is nothing to score.
std::optional<double> DocumentAccuracy(long correct, long partial,
                                       long incorrect);

struct SentenceTally {
  int entity_count = 0;
  MatchCounts counts;
};

struct DocumentTally {
  std::string document_id;
  int sentence_count = 0;
  std::vector<SentenceTally> sentences;

  MatchCounts Totals() const;
};

struct EvalReport {
  struct DocumentRow {
    std::string document_id;
    int sentence_count = 0;
    long correct = 0;
    long partial = 0;
    long incorrect = 0;
    double accuracy = 0.0;
  };
  std::vector<DocumentRow> per_document;
  std::vector<std::string> skipped_documents;

  // Sentence-weighted over documents.
  double overall_accuracy = 0.0;

  // Unweighted distribution of per-document accuracy. std is the population
  // deviation; percentiles interpolate linearly between order statistics.
  double mean = 0.0;
  double std = 0.0;
  double min = 0.0;
  double p25 = 0.0;
  double p50 = 0.0;
  double p75 = 0.0;
  double max = 0.0;

  // Matches pooled by the entity count of their sentence (1..5, 6+).
  std::array<MatchCounts, kEntityBuckets> bucket_counts{};
  std::array<std::optional<double>, kEntityBuckets> by_entity_count{};
};

// Throws std::invalid_argument when no document has anything to score.
EvalReport Aggregate(std::span<const DocumentTally> documents);

// Joins predictions to gold labels on (document, sentence, entity start),
// falling back to entity text when a prediction carries no position. Gold
// entities without a prediction are INCORRECT. Documents without gold labels
// are returned with no sentences and end up skipped.
std::vector<DocumentTally> ScoreDocuments(
    const std::vector<Document> &gold_docs,
    const std::vector<ExtractionPair> &predictions,
    std::vector<MatchResult> *matches = nullptr);

nlohmann::json ReportToJson(const EvalReport &report);
std::string FormatReport(const EvalReport &report);

}  // namespace openkv

#endif  // OPENKV_EVAL_H_
