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

#include "openkv/eval.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace openkv {

using nlohmann::json;

std::string_view MatchKindName(MatchKind kind) {
  switch (kind) {
    case MatchKind::kCorrect: return "CORRECT";
    case MatchKind::kPartial: return "PARTIAL";
    case MatchKind::kIncorrect: return "INCORRECT";
  }
  return "INCORRECT";
}

std::vector<std::string> MatchTokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    unsigned char u = static_cast<unsigned char>(c);
    if (u < 0x80 && std::ispunct(u)) continue;
    if (u < 0x80 && std::isspace(u)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
      continue;
    }
    current += static_cast<char>(u < 0x80 ? std::tolower(u) : u);
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

MatchResult ClassifyMatch(const std::vector<std::string> &gold_keys,
                          const std::optional<std::string> &predicted_key) {
  MatchResult result;
  result.gold_keys = gold_keys;
  result.predicted_key = predicted_key;
  result.kind = MatchKind::kIncorrect;
  result.overlap = 0.0;
  if (!predicted_key) return result;

  std::vector<std::string> predicted = MatchTokens(*predicted_key);
  std::map<std::string, int> predicted_bag;
  for (const std::string &t : predicted) ++predicted_bag[t];

  for (const std::string &key : gold_keys) {
    std::vector<std::string> gold = MatchTokens(key);
    if (gold == predicted) {
      result.kind = MatchKind::kCorrect;
      result.overlap = 1.0;
      return result;
    }
    if (gold.empty()) continue;
    std::map<std::string, int> bag = predicted_bag;
    long shared = 0;
    for (const std::string &t : gold) {
      auto it = bag.find(t);
      if (it != bag.end() && it->second > 0) {
        --it->second;
        ++shared;
      }
    }
    result.overlap = std::max(
        result.overlap, static_cast<double>(shared) / static_cast<double>(gold.size()));
  }
  if (result.overlap > 0.5) result.kind = MatchKind::kPartial;
  return result;
}

void MatchCounts::Add(MatchKind kind) {
  switch (kind) {
    case MatchKind::kCorrect: ++correct; break;
    case MatchKind::kPartial: ++partial; break;
    case MatchKind::kIncorrect: ++incorrect; break;
  }
}

MatchCounts &MatchCounts::operator+=(const MatchCounts &other) {
  correct += other.correct;
  partial += other.partial;
  incorrect += other.incorrect;
  return *this;
}

std::optional<double> DocumentAccuracy(long correct, long partial,
                                       long incorrect) {
  long total = correct + partial + incorrect;
  if (total <= 0) return std::nullopt;
  return (static_cast<double>(correct) + 0.5 * static_cast<double>(partial)) /
         static_cast<double>(total);
}

MatchCounts DocumentTally::Totals() const {
  MatchCounts total;
  for (const SentenceTally &s : sentences) total += s.counts;
  return total;
}

namespace {

// Linear interpolation between closest ranks over a sorted sample.
double Percentile(const std::vector<double> &sorted, double q) {
  double rank = q * static_cast<double>(sorted.size() - 1);
  size_t lo = static_cast<size_t>(std::floor(rank));
  size_t hi = std::min(lo + 1, sorted.size() - 1);
  double frac = rank - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

}  // namespace

EvalReport Aggregate(std::span<const DocumentTally> documents) {
  EvalReport report;
  std::vector<double> accuracies;
  double weighted = 0.0;
  double weight = 0.0;
  for (const DocumentTally &doc : documents) {
    MatchCounts totals = doc.Totals();
    std::optional<double> accuracy =
        DocumentAccuracy(totals.correct, totals.partial, totals.incorrect);
    if (!accuracy) {
      report.skipped_documents.push_back(doc.document_id);
      continue;
    }
    report.per_document.push_back({doc.document_id, doc.sentence_count,
                                   totals.correct, totals.partial,
                                   totals.incorrect, *accuracy});
    accuracies.push_back(*accuracy);
    weighted += *accuracy * doc.sentence_count;
    weight += doc.sentence_count;
    for (const SentenceTally &s : doc.sentences) {
      int bucket = EntityCountBucket(s.entity_count);
      if (bucket >= 0) report.bucket_counts[bucket] += s.counts;
    }
  }
  if (accuracies.empty()) {
    throw std::invalid_argument("no scorable documents");
  }
  if (weight <= 0) {
    throw std::invalid_argument("scored documents have no sentences");
  }
  report.overall_accuracy = weighted / weight;

  double n = static_cast<double>(accuracies.size());
  double sum = 0.0;
  for (double a : accuracies) sum += a;
  report.mean = sum / n;
  double sq = 0.0;
  for (double a : accuracies) sq += (a - report.mean) * (a - report.mean);
  report.std = std::sqrt(sq / n);

  std::vector<double> sorted = accuracies;
  std::sort(sorted.begin(), sorted.end());
  report.min = sorted.front();
  report.max = sorted.back();
  report.p25 = Percentile(sorted, 0.25);
  report.p50 = Percentile(sorted, 0.50);
  report.p75 = Percentile(sorted, 0.75);

  for (int b = 0; b < kEntityBuckets; ++b) {
    const MatchCounts &c = report.bucket_counts[b];
    report.by_entity_count[b] =
        DocumentAccuracy(c.correct, c.partial, c.incorrect);
  }
  return report;
}

std::vector<DocumentTally> ScoreDocuments(
    const std::vector<Document> &gold_docs,
    const std::vector<ExtractionPair> &predictions,
    std::vector<MatchResult> *matches) {
  using PositionKey = std::tuple<std::string, std::string, int>;
  using TextKey = std::tuple<std::string, std::string, std::string>;
  std::map<PositionKey, const ExtractionPair *> by_position;
  std::map<TextKey, std::vector<const ExtractionPair *>> by_text;
  for (const ExtractionPair &p : predictions) {
    if (p.entity.char_start >= 0) {
      by_position.emplace(PositionKey{p.document_id, p.sentence_id,
                                      p.entity.char_start},
                          &p);
    } else {
      by_text[{p.document_id, p.sentence_id, p.entity.text}].push_back(&p);
    }
  }

  std::vector<DocumentTally> tallies;
  for (const Document &doc : gold_docs) {
    DocumentTally tally;
    tally.document_id = doc.document_id;
    tally.sentence_count = static_cast<int>(doc.sentences.size());
    for (const ParsedSentence &s : doc.sentences) {
      SentenceTally sentence;
      for (const GoldLabel &g : doc.gold) {
        if (g.sentence_id != s.sentence_id) continue;
        ++sentence.entity_count;
        std::optional<std::string> predicted;
        auto pos = by_position.find({doc.document_id, s.sentence_id,
                                     g.entity_char_start});
        if (pos != by_position.end() &&
            pos->second->entity.text == g.entity_text) {
          predicted = pos->second->key;
        } else {
          auto text = by_text.find({doc.document_id, s.sentence_id,
                                    g.entity_text});
          if (text != by_text.end() && !text->second.empty()) {
            predicted = text->second.front()->key;
            text->second.erase(text->second.begin());
          }
        }
        MatchResult m = ClassifyMatch(g.keys, predicted);
        m.document_id = doc.document_id;
        m.sentence_id = s.sentence_id;
        m.entity_text = g.entity_text;
        m.entity_char_start = g.entity_char_start;
        sentence.counts.Add(m.kind);
        if (matches != nullptr) matches->push_back(std::move(m));
      }
      if (sentence.entity_count > 0) tally.sentences.push_back(sentence);
    }
    tallies.push_back(std::move(tally));
  }
  return tallies;
}

json ReportToJson(const EvalReport &r) {
  json docs = json::array();
  for (const EvalReport::DocumentRow &d : r.per_document) {
    docs.push_back({{"document_id", d.document_id},
                    {"sentence_count", d.sentence_count},
                    {"correct", d.correct},
                    {"partial", d.partial},
                    {"incorrect", d.incorrect},
                    {"accuracy", d.accuracy}});
  }
  json buckets = json::object();
  for (int b = 0; b < kEntityBuckets; ++b) {
    std::string name(kBucketNames[b]);
    buckets[name] = r.by_entity_count[b] ? json(*r.by_entity_count[b])
                                         : json(nullptr);
  }
  return {{"per_document", docs},
          {"skipped_documents", r.skipped_documents},
          {"overall_accuracy", r.overall_accuracy},
          {"mean", r.mean},
          {"std", r.std},
          {"min", r.min},
          {"p25", r.p25},
          {"p50", r.p50},
          {"p75", r.p75},
          {"max", r.max},
          {"by_entity_count", buckets}};
}

std::string FormatReport(const EvalReport &r) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-28s %8s %8s %8s %8s %9s\n", "document",
                "sents", "correct", "partial", "wrong", "accuracy");
  out << buf;
  for (const EvalReport::DocumentRow &d : r.per_document) {
    std::snprintf(buf, sizeof(buf), "%-28s %8d %8ld %8ld %8ld %9.4f\n",
                  d.document_id.c_str(), d.sentence_count, d.correct,
                  d.partial, d.incorrect, d.accuracy);
    out << buf;
  }
  for (const std::string &id : r.skipped_documents) {
    out << id << ": skipped (no gold labels)\n";
  }
  out << "\n";
  auto row = [&](const char *name, double v) {
    std::snprintf(buf, sizeof(buf), "%-20s %9.4f\n", name, v);
    out << buf;
  };
  row("overall accuracy", r.overall_accuracy);
  row("mean accuracy", r.mean);
  row("standard deviation", r.std);
  row("minimum accuracy", r.min);
  row("25 percentile", r.p25);
  row("50 percentile", r.p50);
  row("75 percentile", r.p75);
  row("maximum accuracy", r.max);
  out << "\n";
  for (int b = 0; b < kEntityBuckets; ++b) {
    std::string name = std::string(kBucketNames[b]) + " entities";
    if (r.by_entity_count[b]) {
      row(name.c_str(), *r.by_entity_count[b]);
    } else {
      std::snprintf(buf, sizeof(buf), "%-20s %9s\n", name.c_str(), "-");
      out << buf;
    }
  }
  return out.str();
}

}  // namespace openkv
