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

#ifndef OPENKV_CORPUS_H_
#define OPENKV_CORPUS_H_

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace openkv {

// Coarse part-of-speech classes. Anything the extractor does not look at
// collapses into kOther.
enum class Pos { kNoun, kPropn, kPron, kAdj, kAdp, kVerb, kNum, kOther };

// Normalized dependency relations. Upstream label sets are mapped onto this
// closed set at ingestion; see NormalizeDepRel.
enum class DepRel { kSubj, kObj, kCompound, kPrepObj, kOther };

// Value-bearing entity types. Declaration order is the canonical ordering
// used when questions are generated per type.
enum class EntityType {
  kMoney,
  kPercent,
  kDate,
  kTime,
  kCardinal,
  kOrdinal,
  kQuantity,
};

inline constexpr std::array<EntityType, 7> kAllEntityTypes = {
    EntityType::kMoney,    EntityType::kPercent, EntityType::kDate,
    EntityType::kTime,     EntityType::kCardinal, EntityType::kOrdinal,
    EntityType::kQuantity,
};

std::string_view PosName(Pos pos);
std::string_view DepRelName(DepRel rel);
std::string_view EntityTypeName(EntityType type);

// Maps a UPOS (or already-coarse) tag. Unknown tags become kOther.
Pos ParsePos(std::string_view tag);

// Maps a raw parser relation label onto the closed set:
//   nsubj, nsubjpass, csubj           -> kSubj
//   dobj, obj, iobj, attr             -> kObj
//   pobj                              -> kPrepObj (an object of a preposition)
//   compound, nn                      -> kCompound
//   anything else                     -> kOther
// Subtypes ("nsubj:pass") are stripped first. Normalized names map to
// themselves so serialized corpora reload unchanged.
DepRel NormalizeDepRel(std::string_view label);

// Returns nullopt for types outside the closed set (PERSON, ORG, ...).
std::optional<EntityType> ParseEntityType(std::string_view name);

inline bool IsNominal(Pos pos) {
  return pos == Pos::kNoun || pos == Pos::kPropn || pos == Pos::kPron;
}

// Subject or object position. Prepositional objects count as objects.
inline bool IsArgument(DepRel rel) {
  return rel == DepRel::kSubj || rel == DepRel::kObj ||
         rel == DepRel::kPrepObj;
}

struct Token {
  int index = 0;
  std::string text;
  Pos pos = Pos::kOther;
  int head = 0;  // equal to index for the root
  DepRel deprel = DepRel::kOther;
  int char_start = 0;
  int char_end = 0;

  bool operator==(const Token &) const = default;
};

struct EntityMention {
  std::string sentence_id;
  int char_start = 0;
  int char_end = 0;
  std::string text;
  EntityType etype = EntityType::kMoney;

  bool operator==(const EntityMention &) const = default;
};

struct GoldLabel {
  std::string sentence_id;
  std::string entity_text;
  int entity_char_start = 0;
  std::vector<std::string> keys;

  bool operator==(const GoldLabel &) const = default;
};

struct ParsedSentence {
  std::string sentence_id;
  std::string document_id;
  std::string paragraph_id;  // optional; empty means "whole document"
  std::string text;
  std::vector<Token> tokens;
  std::vector<EntityMention> entities;

  bool operator==(const ParsedSentence &) const = default;

  // Tokens whose head is `index`, ascending.
  std::vector<int> Children(int index) const;

  // Inclusive token range [first, last] covered by a character span, or
  // nullopt when the span does not start and end on token boundaries.
  std::optional<std::pair<int, int>> TokenRange(int char_start,
                                                int char_end) const;

  // mask[i] is true when token i overlaps any entity mention.
  std::vector<bool> EntityTokenMask() const;
};

struct Document {
  std::string document_id;
  std::vector<ParsedSentence> sentences;
  std::vector<GoldLabel> gold;

  bool operator==(const Document &) const = default;
};

enum class CorpusFormat { kParsedJsonl, kConlluPlus };

std::optional<CorpusFormat> ParseCorpusFormat(std::string_view name);

// Raised for unreadable files and for records that violate the data model.
class CorpusError : public std::runtime_error {
 public:
  CorpusError(const std::string &file, int line, const std::string &field,
              const std::string &message);

  const std::string &file() const { return file_; }
  int line() const { return line_; }
  const std::string &field() const { return field_; }

 private:
  std::string file_;
  int line_;
  std::string field_;
};

// Loads a corpus file. Sentences are grouped into documents by document_id,
// in order of first appearance. Malformed records throw CorpusError.
std::vector<Document> LoadCorpus(const std::string &path, CorpusFormat format);

// Stream variants; `source` is used in error messages.
std::vector<Document> ReadParsedJsonl(std::istream &in,
                                      const std::string &source);
std::vector<Document> ReadConlluPlus(std::istream &in,
                                     const std::string &source,
                                     std::istream *gold);

// Checks every data-model invariant of a sentence. Throws CorpusError with
// `field` naming the offending element.
void ValidateSentence(const ParsedSentence &sentence, const std::string &source,
                      int line);

// Writes documents in parsed-jsonl, one sentence per line. Gold labels are
// attached to the record of the sentence they reference.
void WriteParsedJsonl(const std::vector<Document> &docs, std::ostream &out);

nlohmann::json SentenceToJson(const ParsedSentence &sentence,
                              const std::vector<GoldLabel> &gold);

// Histogram buckets for sentences by entity count: 1..5 and 6+.
inline constexpr int kEntityBuckets = 6;
inline constexpr std::array<std::string_view, kEntityBuckets> kBucketNames = {
    "1", "2", "3", "4", "5", "6+"};

// Bucket index for a sentence with `n` entities, or -1 when n < 1.
inline int EntityCountBucket(int n) {
  if (n < 1) return -1;
  return n >= kEntityBuckets ? kEntityBuckets - 1 : n - 1;
}

// Dataset statistics in the shape of the usual corpus tables.
struct StatsReport {
  long documents = 0;
  long paragraphs = 0;
  long sentences = 0;
  long words = 0;
  long entities = 0;
  long gold_labels = 0;
  long gold_keys = 0;
  std::map<EntityType, long> entity_type_counts;

  double entities_per_sentence = 0;
  double words_per_sentence = 0;
  double words_per_paragraph = 0;
  double labels_per_entity = 0;
  double entities_per_document = 0;

  std::array<long, kEntityBuckets> sentences_by_entity_count{};
  std::array<double, kEntityBuckets> words_per_sentence_by_bucket{};
};

// Words are whitespace-separated runs of the sentence text, independent of
// the tokenizer that produced the parse.
StatsReport CorpusStats(const std::vector<Document> &docs);

nlohmann::json StatsToJson(const StatsReport &report);
std::string FormatStats(const StatsReport &report);

}  // namespace openkv

#endif  // OPENKV_CORPUS_H_
