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

#ifndef OPENKV_PIPELINE_H_
#define OPENKV_PIPELINE_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "openkv/association.h"
#include "openkv/corpus.h"
#include "openkv/phrase_gen.h"
#include "openkv/question_gen.h"
#include "openkv/reader.h"

namespace openkv {

struct PipelineConfig {
  ReaderSpec reader;
  // Skip phrase generation; every entity goes straight to the reverse
  // question.
  bool ablation_no_phrases = false;
  int parallelism = 1;
  std::string diagnostics_path;  // optional
  // Keep per-sentence phrases and questions in the result.
  bool trace = false;

  void Validate() const;

  // Config-file form. Unknown keys are rejected.
  static PipelineConfig FromJson(const nlohmann::json &j);
  nlohmann::json ToJson() const;
};

struct SentenceTrace {
  std::string document_id;
  std::string sentence_id;
  std::vector<NounPhrase> phrases;
  std::vector<Question> questions;
};

struct RunDiagnostics {
  std::vector<SentenceDiagnostics> sentences;

  int total_questions() const;
  int reader_errors() const;
  nlohmann::json ToJson() const;
};

struct RunResult {
  // Sorted by document id, then sentence order, then entity position.
  std::vector<ExtractionPair> pairs;
  RunDiagnostics diagnostics;
  std::vector<SentenceTrace> trace;  // filled when config.trace
};

// Extracts one sentence: phrases, questions, association.
std::vector<ExtractionPair> ExtractSentence(const ParsedSentence &sentence,
                                            const Reader &reader,
                                            bool ablation_no_phrases,
                                            SentenceDiagnostics *diagnostics,
                                            SentenceTrace *trace = nullptr);

// Runs documents through a pool of config.parallelism workers.
RunResult RunPipeline(const std::vector<Document> &docs, const Reader &reader,
                      const PipelineConfig &config);

// Builds the reader from config.reader, preflights it, runs, and writes the
// diagnostics file when one is configured.
RunResult RunPipeline(const std::vector<Document> &docs,
                      const PipelineConfig &config);

void WriteExtractions(const std::vector<ExtractionPair> &pairs,
                      std::ostream &out);
std::vector<ExtractionPair> ReadExtractions(std::istream &in,
                                            const std::string &source);

nlohmann::json TraceToJson(const std::vector<SentenceTrace> &trace);

}  // namespace openkv

#endif  // OPENKV_PIPELINE_H_
