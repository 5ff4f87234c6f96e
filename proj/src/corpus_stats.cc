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

#include <cstdio>
#include <set>
#include <sstream>

#include "openkv/corpus.h"

namespace openkv {

namespace {

long CountWords(const std::string &text) {
  long words = 0;
  bool in_word = false;
  for (char c : text) {
    bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r';
    if (!space && !in_word) ++words;
    in_word = !space;
  }
  return words;
}

double Ratio(long num, long den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

StatsReport CorpusStats(const std::vector<Document> &docs) {
  StatsReport r;
  std::array<long, kEntityBuckets> bucket_words{};
  for (const Document &doc : docs) {
    ++r.documents;
    std::set<std::string> paragraphs;
    for (const ParsedSentence &s : doc.sentences) {
      ++r.sentences;
      paragraphs.insert(s.paragraph_id);
      long words = CountWords(s.text);
      r.words += words;
      r.entities += static_cast<long>(s.entities.size());
      for (const EntityMention &e : s.entities) ++r.entity_type_counts[e.etype];
      int bucket = EntityCountBucket(static_cast<int>(s.entities.size()));
      if (bucket >= 0) {
        ++r.sentences_by_entity_count[bucket];
        bucket_words[bucket] += words;
      }
    }
    r.paragraphs += static_cast<long>(paragraphs.size());
    for (const GoldLabel &g : doc.gold) {
      ++r.gold_labels;
      r.gold_keys += static_cast<long>(g.keys.size());
    }
  }
  r.entities_per_sentence = Ratio(r.entities, r.sentences);
  r.words_per_sentence = Ratio(r.words, r.sentences);
  r.words_per_paragraph = Ratio(r.words, r.paragraphs);
  r.labels_per_entity = Ratio(r.gold_keys, r.gold_labels);
  r.entities_per_document = Ratio(r.entities, r.documents);
  for (int b = 0; b < kEntityBuckets; ++b) {
    r.words_per_sentence_by_bucket[b] =
        Ratio(bucket_words[b], r.sentences_by_entity_count[b]);
  }
  return r;
}

nlohmann::json StatsToJson(const StatsReport &r) {
  nlohmann::json types = nlohmann::json::object();
  for (EntityType t : kAllEntityTypes) {
    auto it = r.entity_type_counts.find(t);
    types[std::string(EntityTypeName(t))] =
        it == r.entity_type_counts.end() ? 0 : it->second;
  }
  nlohmann::json histogram = nlohmann::json::array();
  for (int b = 0; b < kEntityBuckets; ++b) {
    histogram.push_back({{"entities", kBucketNames[b]},
                         {"sentences", r.sentences_by_entity_count[b]},
                         {"words_per_sentence",
                          r.words_per_sentence_by_bucket[b]}});
  }
  return {
      {"documents", r.documents},
      {"paragraphs", r.paragraphs},
      {"sentences", r.sentences},
      {"words", r.words},
      {"entities", r.entities},
      {"entity_type_counts", types},
      {"entities_per_sentence", r.entities_per_sentence},
      {"words_per_sentence", r.words_per_sentence},
      {"words_per_paragraph", r.words_per_paragraph},
      {"labels_per_entity", r.labels_per_entity},
      {"entities_per_document", r.entities_per_document},
      {"sentences_by_entity_count", histogram},
  };
}

std::string FormatStats(const StatsReport &r) {
  std::ostringstream out;
  char buf[128];
  auto row = [&](const char *name, double value) {
    std::snprintf(buf, sizeof(buf), "%-24s %12.3f\n", name, value);
    out << buf;
  };
  auto count = [&](const std::string &name, long value) {
    std::snprintf(buf, sizeof(buf), "%-24s %12ld\n", name.c_str(), value);
    out << buf;
  };
  count("documents", r.documents);
  count("sentences", r.sentences);
  count("words", r.words);
  count("entities", r.entities);
  out << "\n";
  for (EntityType t : kAllEntityTypes) {
    auto it = r.entity_type_counts.find(t);
    count(std::string(EntityTypeName(t)),
          it == r.entity_type_counts.end() ? 0 : it->second);
  }
  out << "\n";
  row("entities per sentence", r.entities_per_sentence);
  row("words per paragraph", r.words_per_paragraph);
  row("labels per entity", r.labels_per_entity);
  row("entities per document", r.entities_per_document);
  row("words per sentence", r.words_per_sentence);
  out << "\n";
  std::snprintf(buf, sizeof(buf), "%-10s %12s %20s\n", "entities", "sentences",
                "words per sentence");
  out << buf;
  for (int b = 0; b < kEntityBuckets; ++b) {
    std::snprintf(buf, sizeof(buf), "%-10s %12ld %20.2f\n",
                  std::string(kBucketNames[b]).c_str(),
                  r.sentences_by_entity_count[b],
                  r.words_per_sentence_by_bucket[b]);
    out << buf;
  }
  return out.str();
}

}  // namespace openkv
