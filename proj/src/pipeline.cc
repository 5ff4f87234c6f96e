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

#include "openkv/pipeline.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace openkv {

using nlohmann::json;

void PipelineConfig::Validate() const {
  if (parallelism < 1) {
    throw std::invalid_argument("parallelism must be at least 1");
  }
  reader.Validate();
}

PipelineConfig PipelineConfig::FromJson(const json &j) {
  if (!j.is_object()) throw std::invalid_argument("config must be an object");
  PipelineConfig config;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string &key = it.key();
    if (key == "reader") {
      const json &r = it.value();
      if (!r.is_object()) throw std::invalid_argument("reader must be an object");
      for (auto rt = r.begin(); rt != r.end(); ++rt) {
        const std::string &k = rt.key();
        if (k == "kind") {
          auto kind = ParseReaderKind(rt.value().get<std::string>());
          if (!kind) throw std::invalid_argument("unknown reader kind");
          config.reader.kind = *kind;
        } else if (k == "endpoint") {
          config.reader.endpoint = rt.value().get<std::string>();
        } else if (k == "fixture_path") {
          config.reader.fixture_path = rt.value().get<std::string>();
        } else if (k == "timeout_ms") {
          config.reader.timeout_ms = rt.value().get<int>();
        } else if (k == "retries") {
          config.reader.retries = rt.value().get<int>();
        } else if (k == "backoff_ms") {
          config.reader.backoff_ms = rt.value().get<int>();
        } else if (k == "max_in_flight") {
          config.reader.max_in_flight = rt.value().get<int>();
        } else {
          throw std::invalid_argument("unknown reader key: " + k);
        }
      }
    } else if (key == "ablation_no_phrases") {
      config.ablation_no_phrases = it.value().get<bool>();
    } else if (key == "parallelism") {
      config.parallelism = it.value().get<int>();
    } else if (key == "diagnostics_path") {
      config.diagnostics_path = it.value().get<std::string>();
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  return config;
}

json PipelineConfig::ToJson() const {
  return {{"reader",
           {{"kind", ReaderKindName(reader.kind)},
            {"endpoint", reader.endpoint},
            {"fixture_path", reader.fixture_path},
            {"timeout_ms", reader.timeout_ms},
            {"retries", reader.retries},
            {"backoff_ms", reader.backoff_ms},
            {"max_in_flight", reader.max_in_flight}}},
          {"ablation_no_phrases", ablation_no_phrases},
          {"parallelism", parallelism},
          {"diagnostics_path", diagnostics_path}};
}

int RunDiagnostics::total_questions() const {
  int n = 0;
  for (const SentenceDiagnostics &d : sentences) {
    n += d.forward_questions + d.reverse_questions;
  }
  return n;
}

int RunDiagnostics::reader_errors() const {
  int n = 0;
  for (const SentenceDiagnostics &d : sentences) n += d.reader_errors;
  return n;
}

json RunDiagnostics::ToJson() const {
  json per_sentence = json::array();
  int entities = 0, phrases = 0, forward = 0, reverse = 0, pairs = 0;
  int forward_discards = 0, reverse_discards = 0;
  for (const SentenceDiagnostics &d : sentences) {
    per_sentence.push_back(DiagnosticsToJson(d));
    entities += d.entities;
    phrases += d.phrases;
    forward += d.forward_questions;
    reverse += d.reverse_questions;
    forward_discards += d.forward_discards;
    reverse_discards += d.reverse_discards;
    pairs += d.pairs;
  }
  return {{"totals",
           {{"sentences", static_cast<int>(sentences.size())},
            {"entities", entities},
            {"phrases", phrases},
            {"forward_questions", forward},
            {"reverse_questions", reverse},
            {"forward_discards", forward_discards},
            {"reverse_discards", reverse_discards},
            {"reader_errors", reader_errors()},
            {"pairs", pairs}}},
          {"sentences", per_sentence}};
}

std::vector<ExtractionPair> ExtractSentence(const ParsedSentence &sentence,
                                            const Reader &reader,
                                            bool ablation_no_phrases,
                                            SentenceDiagnostics *diagnostics,
                                            SentenceTrace *trace) {
  std::vector<NounPhrase> phrases;
  std::vector<Question> questions;
  if (!ablation_no_phrases) {
    phrases = AllPhrases(sentence);
    questions = ForwardQuestions(sentence, phrases);
  }
  std::vector<ExtractionPair> pairs =
      Associate(sentence, questions, reader, diagnostics);
  if (diagnostics != nullptr) {
    diagnostics->phrases = static_cast<int>(phrases.size());
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const ExtractionPair &a, const ExtractionPair &b) {
                     return a.entity.char_start < b.entity.char_start;
                   });
  if (trace != nullptr) {
    trace->document_id = sentence.document_id;
    trace->sentence_id = sentence.sentence_id;
    trace->phrases = std::move(phrases);
    trace->questions = std::move(questions);
    for (const EntityMention &e : sentence.entities) {
      bool keyed_forward = std::any_of(
          pairs.begin(), pairs.end(), [&](const ExtractionPair &p) {
            return p.entity == e && p.key_source == KeySource::kForwardPhrase;
          });
      if (!keyed_forward) trace->questions.push_back(ReverseQuestion(e));
    }
  }
  return pairs;
}

namespace {

struct DocumentOutput {
  std::vector<ExtractionPair> pairs;
  std::vector<SentenceDiagnostics> diagnostics;
  std::vector<SentenceTrace> trace;
};

DocumentOutput ProcessDocument(const Document &doc, const Reader &reader,
                               const PipelineConfig &config) {
  DocumentOutput out;
  for (const ParsedSentence &s : doc.sentences) {
    SentenceDiagnostics diag;
    SentenceTrace trace;
    std::vector<ExtractionPair> pairs =
        ExtractSentence(s, reader, config.ablation_no_phrases, &diag,
                        config.trace ? &trace : nullptr);
    out.pairs.insert(out.pairs.end(), std::make_move_iterator(pairs.begin()),
                     std::make_move_iterator(pairs.end()));
    out.diagnostics.push_back(std::move(diag));
    if (config.trace) out.trace.push_back(std::move(trace));
  }
  return out;
}

}  // namespace

RunResult RunPipeline(const std::vector<Document> &docs, const Reader &reader,
                      const PipelineConfig &config) {
  if (config.parallelism < 1) {
    throw std::invalid_argument("parallelism must be at least 1");
  }
  // Each slot is written by exactly one worker; joining is the only
  // synchronization point.
  std::vector<DocumentOutput> outputs(docs.size());
  std::atomic<size_t> next{0};
  std::vector<std::exception_ptr> failures(docs.size());
  auto work = [&]() {
    for (size_t i = next++; i < docs.size(); i = next++) {
      try {
        outputs[i] = ProcessDocument(docs[i], reader, config);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  size_t workers = std::min<size_t>(config.parallelism, docs.size());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  // Rethrow the first failure in input order so errors are deterministic.
  for (const std::exception_ptr &e : failures) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<size_t> order(docs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return docs[a].document_id < docs[b].document_id;
  });

  RunResult result;
  for (size_t i : order) {
    DocumentOutput &o = outputs[i];
    for (ExtractionPair &p : o.pairs) result.pairs.push_back(std::move(p));
    for (SentenceDiagnostics &d : o.diagnostics) {
      result.diagnostics.sentences.push_back(std::move(d));
    }
    for (SentenceTrace &t : o.trace) result.trace.push_back(std::move(t));
  }
  return result;
}

RunResult RunPipeline(const std::vector<Document> &docs,
                      const PipelineConfig &config) {
  config.Validate();
  std::unique_ptr<Reader> reader = MakeReader(config.reader);
  reader->Preflight();
  RunResult result = RunPipeline(docs, *reader, config);
  if (!config.diagnostics_path.empty()) {
    std::ofstream out(config.diagnostics_path);
    if (!out) {
      throw std::runtime_error("cannot write " + config.diagnostics_path);
    }
    out << result.diagnostics.ToJson().dump(2) << "\n";
  }
  return result;
}

void WriteExtractions(const std::vector<ExtractionPair> &pairs,
                      std::ostream &out) {
  for (const ExtractionPair &p : pairs) out << PairToJson(p).dump() << "\n";
}

std::vector<ExtractionPair> ReadExtractions(std::istream &in,
                                            const std::string &source) {
  std::vector<ExtractionPair> pairs;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      pairs.push_back(PairFromJson(json::parse(raw)));
    } catch (const json::exception &e) {
      throw std::runtime_error(source + ":" + std::to_string(line) + ": " +
                               e.what());
    }
  }
  return pairs;
}

json TraceToJson(const std::vector<SentenceTrace> &trace) {
  json out = json::array();
  for (const SentenceTrace &t : trace) {
    json phrases = json::array();
    for (const NounPhrase &p : t.phrases) {
      phrases.push_back({{"text", p.text},
                         {"kind", PhraseKindName(p.kind)},
                         {"tokens", p.token_indices},
                         {"head", p.head_index},
                         {"rank", p.order_rank}});
    }
    json questions = json::array();
    for (const Question &q : t.questions) {
      questions.push_back({{"text", q.text},
                           {"direction", DirectionName(q.direction)},
                           {"etype", EntityTypeName(q.target_etype)}});
    }
    out.push_back({{"document_id", t.document_id},
                   {"sentence_id", t.sentence_id},
                   {"phrases", phrases},
                   {"questions", questions}});
  }
  return out;
}

}  // namespace openkv
