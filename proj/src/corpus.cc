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

#include "openkv/corpus.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "corpus_internal.h"
#include "openkv/utf8.h"

namespace openkv {

using nlohmann::json;

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Accessors that report the failing field path. The JSON library's own
// exceptions carry no record position, so they are translated here.
class RecordReader {
 public:
  RecordReader(const std::string &source, int line)
      : source_(source), line_(line) {}

  [[noreturn]] void Fail(const std::string &field,
                         const std::string &message) const {
    throw CorpusError(source_, line_, field, message);
  }

  const json &Member(const json &obj, const char *key,
                     const std::string &path) const {
    if (!obj.is_object()) Fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) Fail(Join(path, key), "missing field");
    return *it;
  }

  std::string String(const json &obj, const char *key,
                     const std::string &path) const {
    const json &v = Member(obj, key, path);
    if (!v.is_string()) Fail(Join(path, key), "expected a string");
    return v.get<std::string>();
  }

  // Ids may be written as strings or integers.
  std::string Id(const json &obj, const char *key,
                 const std::string &path) const {
    const json &v = Member(obj, key, path);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    Fail(Join(path, key), "expected a string or integer id");
  }

  int Int(const json &obj, const char *key, const std::string &path) const {
    const json &v = Member(obj, key, path);
    if (!v.is_number_integer()) Fail(Join(path, key), "expected an integer");
    return v.get<int>();
  }

  const json &Array(const json &obj, const char *key,
                    const std::string &path) const {
    const json &v = Member(obj, key, path);
    if (!v.is_array()) Fail(Join(path, key), "expected an array");
    return v;
  }

  static std::string Join(const std::string &path, const char *key) {
    return path.empty() ? std::string(key) : path + "." + key;
  }

 private:
  const std::string &source_;
  int line_;
};

std::string Indexed(const char *name, size_t i) {
  return std::string(name) + "[" + std::to_string(i) + "]";
}

GoldLabel ParseGold(const RecordReader &r, const json &g,
                    const std::string &path, const std::string &sentence_id) {
  GoldLabel label;
  label.sentence_id = sentence_id;
  label.entity_char_start = r.Int(g, "entity_start", path);
  label.entity_text = r.String(g, "entity_text", path);
  const json &keys = r.Array(g, "keys", path);
  for (size_t k = 0; k < keys.size(); ++k) {
    if (!keys[k].is_string()) {
      r.Fail(path + "." + Indexed("keys", k), "expected a string");
    }
    label.keys.push_back(keys[k].get<std::string>());
  }
  return label;
}

void ValidateGold(const GoldLabel &label, const ParsedSentence &sentence,
                  const std::string &source, int line,
                  const std::string &path) {
  if (label.keys.empty()) {
    throw CorpusError(source, line, path + ".keys", "no keys");
  }
  CharIndex index(sentence.text);
  int end = label.entity_char_start + CharLength(label.entity_text);
  if (!index.valid_range(label.entity_char_start, end) ||
      index.substr(label.entity_char_start, end) != label.entity_text) {
    throw CorpusError(source, line, path + ".entity_text",
                      "entity text not found at entity_start");
  }
}

// Groups sentences into documents in order of first appearance.
class DocumentCollector {
 public:
  explicit DocumentCollector(const std::string &source) : source_(source) {}

  void Add(ParsedSentence sentence, std::vector<GoldLabel> gold, int line) {
    auto [it, inserted] = positions_.try_emplace(sentence.document_id,
                                                 docs_.size());
    if (inserted) {
      Document doc;
      doc.document_id = sentence.document_id;
      docs_.push_back(std::move(doc));
      seen_.emplace_back();
    }
    size_t d = it->second;
    if (!seen_[d].insert(sentence.sentence_id).second) {
      throw CorpusError(source_, line, "sentence_id",
                        "duplicate sentence id '" + sentence.sentence_id +
                            "' in document '" + sentence.document_id + "'");
    }
    for (GoldLabel &g : gold) docs_[d].gold.push_back(std::move(g));
    docs_[d].sentences.push_back(std::move(sentence));
  }

  std::vector<Document> Finish() { return std::move(docs_); }

  // Locates a sentence by id for late-bound gold labels.
  std::pair<Document *, const ParsedSentence *> Find(
      const std::string &document_id, const std::string &sentence_id) {
    for (Document &doc : docs_) {
      if (!document_id.empty() && doc.document_id != document_id) continue;
      for (const ParsedSentence &s : doc.sentences) {
        if (s.sentence_id == sentence_id) return {&doc, &s};
      }
    }
    return {nullptr, nullptr};
  }

 private:
  const std::string &source_;
  std::vector<Document> docs_;
  std::vector<std::unordered_set<std::string>> seen_;
  std::unordered_map<std::string, size_t> positions_;
};

}  // namespace

std::string_view PosName(Pos pos) {
  switch (pos) {
    case Pos::kNoun: return "NOUN";
    case Pos::kPropn: return "PROPN";
    case Pos::kPron: return "PRON";
    case Pos::kAdj: return "ADJ";
    case Pos::kAdp: return "ADP";
    case Pos::kVerb: return "VERB";
    case Pos::kNum: return "NUM";
    case Pos::kOther: return "OTHER";
  }
  return "OTHER";
}

std::string_view DepRelName(DepRel rel) {
  switch (rel) {
    case DepRel::kSubj: return "SUBJ";
    case DepRel::kObj: return "OBJ";
    case DepRel::kCompound: return "COMPOUND";
    case DepRel::kPrepObj: return "PREP_OBJ";
    case DepRel::kOther: return "OTHER";
  }
  return "OTHER";
}

std::string_view EntityTypeName(EntityType type) {
  switch (type) {
    case EntityType::kMoney: return "MONEY";
    case EntityType::kPercent: return "PERCENT";
    case EntityType::kDate: return "DATE";
    case EntityType::kTime: return "TIME";
    case EntityType::kCardinal: return "CARDINAL";
    case EntityType::kOrdinal: return "ORDINAL";
    case EntityType::kQuantity: return "QUANTITY";
  }
  return "MONEY";
}

Pos ParsePos(std::string_view tag) {
  static const std::unordered_map<std::string, Pos> kTags = {
      {"noun", Pos::kNoun}, {"propn", Pos::kPropn}, {"pron", Pos::kPron},
      {"adj", Pos::kAdj},   {"adp", Pos::kAdp},     {"verb", Pos::kVerb},
      {"aux", Pos::kVerb},  {"num", Pos::kNum},
  };
  auto it = kTags.find(Lower(tag));
  return it == kTags.end() ? Pos::kOther : it->second;
}

DepRel NormalizeDepRel(std::string_view label) {
  static const std::unordered_map<std::string, DepRel> kLabels = {
      {"nsubj", DepRel::kSubj},        {"nsubjpass", DepRel::kSubj},
      {"csubj", DepRel::kSubj},        {"subj", DepRel::kSubj},
      {"dobj", DepRel::kObj},          {"obj", DepRel::kObj},
      {"iobj", DepRel::kObj},          {"attr", DepRel::kObj},
      {"pobj", DepRel::kPrepObj},      {"prep_obj", DepRel::kPrepObj},
      {"compound", DepRel::kCompound}, {"nn", DepRel::kCompound},
  };
  std::string base = Lower(label.substr(0, label.find(':')));
  auto it = kLabels.find(base);
  return it == kLabels.end() ? DepRel::kOther : it->second;
}

std::optional<EntityType> ParseEntityType(std::string_view name) {
  std::string lower = Lower(name);
  for (EntityType t : kAllEntityTypes) {
    if (Lower(EntityTypeName(t)) == lower) return t;
  }
  return std::nullopt;
}

std::optional<CorpusFormat> ParseCorpusFormat(std::string_view name) {
  if (name == "parsed-jsonl") return CorpusFormat::kParsedJsonl;
  if (name == "conllu-plus") return CorpusFormat::kConlluPlus;
  return std::nullopt;
}

CorpusError::CorpusError(const std::string &file, int line,
                         const std::string &field, const std::string &message)
    : std::runtime_error(file + ":" + std::to_string(line) + ": " +
                         (field.empty() ? "" : field + ": ") + message),
      file_(file),
      line_(line),
      field_(field) {}

std::vector<int> ParsedSentence::Children(int index) const {
  std::vector<int> children;
  for (const Token &t : tokens) {
    if (t.head == index && t.index != index) children.push_back(t.index);
  }
  return children;
}

std::optional<std::pair<int, int>> ParsedSentence::TokenRange(
    int char_start, int char_end) const {
  int first = -1, last = -1;
  for (const Token &t : tokens) {
    if (t.char_start == char_start) first = t.index;
    if (t.char_end == char_end) last = t.index;
  }
  if (first < 0 || last < first) return std::nullopt;
  // Interior boundaries must not be crossed either.
  for (const Token &t : tokens) {
    bool overlaps = t.char_start < char_end && char_start < t.char_end;
    bool inside = t.char_start >= char_start && t.char_end <= char_end;
    if (overlaps && !inside) return std::nullopt;
  }
  return std::make_pair(first, last);
}

std::vector<bool> ParsedSentence::EntityTokenMask() const {
  std::vector<bool> mask(tokens.size(), false);
  for (const EntityMention &e : entities) {
    for (const Token &t : tokens) {
      if (t.char_start < e.char_end && e.char_start < t.char_end) {
        mask[t.index] = true;
      }
    }
  }
  return mask;
}

void ValidateSentence(const ParsedSentence &sentence, const std::string &source,
                      int line) {
  auto fail = [&](const std::string &field, const std::string &message) {
    throw CorpusError(source, line, field, message);
  };
  const int n = static_cast<int>(sentence.tokens.size());
  if (n == 0) fail("tokens", "sentence has no tokens");

  CharIndex index(sentence.text);
  int roots = 0;
  int prev_end = 0;
  for (int i = 0; i < n; ++i) {
    const Token &t = sentence.tokens[i];
    std::string path = Indexed("tokens", i);
    if (t.index != i) fail(path + ".i", "token index out of sequence");
    if (t.head < 0 || t.head >= n) fail(path + ".head", "head out of range");
    if (t.head == i) ++roots;
    if (t.char_start < prev_end || t.char_start >= t.char_end ||
        t.char_end > index.size()) {
      fail(path + ".start", "character span out of order or out of range");
    }
    prev_end = t.char_end;
  }
  if (roots != 1) {
    fail("tokens", "expected exactly one root, found " + std::to_string(roots));
  }
  // Every head chain must reach the root.
  for (int i = 0; i < n; ++i) {
    int node = i;
    for (int steps = 0; sentence.tokens[node].head != node; ++steps) {
      if (steps > n) fail(Indexed("tokens", i) + ".head", "dependency cycle");
      node = sentence.tokens[node].head;
    }
  }

  for (size_t k = 0; k < sentence.entities.size(); ++k) {
    const EntityMention &e = sentence.entities[k];
    std::string path = Indexed("entities", k);
    if (!index.valid_range(e.char_start, e.char_end) ||
        e.char_start == e.char_end) {
      fail(path + ".start", "character span out of range");
    }
    if (index.substr(e.char_start, e.char_end) != e.text) {
      fail(path + ".text", "text does not match sentence at [start, end)");
    }
    if (!sentence.TokenRange(e.char_start, e.char_end)) {
      fail(path + ".start", "entity span not resolvable to whole tokens");
    }
  }
}

std::vector<Document> ReadParsedJsonl(std::istream &in,
                                      const std::string &source) {
  DocumentCollector collector(source);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    RecordReader r(source, line);
    json rec;
    try {
      rec = json::parse(raw);
    } catch (const json::parse_error &e) {
      r.Fail("", std::string("invalid JSON: ") + e.what());
    }
    if (!rec.is_object()) r.Fail("", "expected a JSON object");

    ParsedSentence s;
    s.document_id = r.Id(rec, "document_id", "");
    s.sentence_id = r.Id(rec, "sentence_id", "");
    if (rec.contains("paragraph_id")) {
      s.paragraph_id = r.Id(rec, "paragraph_id", "");
    }
    s.text = r.String(rec, "text", "");

    const json &tokens = r.Array(rec, "tokens", "");
    for (size_t i = 0; i < tokens.size(); ++i) {
      std::string path = Indexed("tokens", i);
      const json &t = tokens[i];
      Token tok;
      tok.index = r.Int(t, "i", path);
      tok.text = r.String(t, "text", path);
      tok.pos = ParsePos(r.String(t, "pos", path));
      tok.head = r.Int(t, "head", path);
      tok.deprel = NormalizeDepRel(r.String(t, "deprel", path));
      tok.char_start = r.Int(t, "start", path);
      tok.char_end = r.Int(t, "end", path);
      s.tokens.push_back(std::move(tok));
    }

    if (rec.contains("entities")) {
      const json &entities = r.Array(rec, "entities", "");
      for (size_t k = 0; k < entities.size(); ++k) {
        std::string path = Indexed("entities", k);
        const json &e = entities[k];
        auto type = ParseEntityType(r.String(e, "etype", path));
        EntityMention m;
        m.sentence_id = s.sentence_id;
        m.char_start = r.Int(e, "start", path);
        m.char_end = r.Int(e, "end", path);
        m.text = r.String(e, "text", path);
        if (!type) continue;  // outside the value-bearing set
        m.etype = *type;
        s.entities.push_back(std::move(m));
      }
    }
    ValidateSentence(s, source, line);

    std::vector<GoldLabel> gold;
    if (rec.contains("gold") && !rec["gold"].is_null()) {
      const json &labels = r.Array(rec, "gold", "");
      for (size_t k = 0; k < labels.size(); ++k) {
        std::string path = Indexed("gold", k);
        GoldLabel g = ParseGold(r, labels[k], path, s.sentence_id);
        ValidateGold(g, s, source, line, path);
        gold.push_back(std::move(g));
      }
    }
    collector.Add(std::move(s), std::move(gold), line);
  }
  if (in.bad()) throw CorpusError(source, line, "", "read error");
  return collector.Finish();
}

std::vector<Document> ReadConlluPlus(std::istream &in,
                                     const std::string &source,
                                     std::istream *gold) {
  std::vector<int> lines;
  std::vector<ParsedSentence> sentences = ParseConlluSentences(in, source, &lines);
  DocumentCollector collector(source);
  for (size_t i = 0; i < sentences.size(); ++i) {
    collector.Add(std::move(sentences[i]), {}, lines[i]);
  }
  if (gold != nullptr) {
    std::string gold_source = source + " (gold)";
    std::string raw;
    int line = 0;
    while (std::getline(*gold, raw)) {
      ++line;
      if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
      RecordReader r(gold_source, line);
      json rec;
      try {
        rec = json::parse(raw);
      } catch (const json::parse_error &e) {
        r.Fail("", std::string("invalid JSON: ") + e.what());
      }
      std::string sentence_id = r.Id(rec, "sentence_id", "");
      std::string document_id;
      if (rec.contains("document_id")) {
        document_id = r.Id(rec, "document_id", "");
      }
      auto [doc, sentence] = collector.Find(document_id, sentence_id);
      if (doc == nullptr) {
        r.Fail("sentence_id", "no sentence with id '" + sentence_id + "'");
      }
      GoldLabel g = ParseGold(r, rec, "", sentence_id);
      ValidateGold(g, *sentence, gold_source, line, "gold");
      doc->gold.push_back(std::move(g));
    }
  }
  return collector.Finish();
}

std::vector<Document> LoadCorpus(const std::string &path, CorpusFormat format) {
  std::ifstream in(path);
  if (!in) throw CorpusError(path, 0, "", "cannot open file");
  if (format == CorpusFormat::kParsedJsonl) return ReadParsedJsonl(in, path);

  // Gold labels for CoNLL-U live next to the corpus: x.conllu -> x.gold.jsonl.
  std::string stem = path;
  if (auto dot = stem.rfind('.');
      dot != std::string::npos && stem.find('/', dot) == std::string::npos) {
    stem.resize(dot);
  }
  std::ifstream gold(stem + ".gold.jsonl");
  return ReadConlluPlus(in, path, gold ? &gold : nullptr);
}

json SentenceToJson(const ParsedSentence &sentence,
                    const std::vector<GoldLabel> &gold) {
  json rec;
  rec["document_id"] = sentence.document_id;
  rec["sentence_id"] = sentence.sentence_id;
  if (!sentence.paragraph_id.empty()) {
    rec["paragraph_id"] = sentence.paragraph_id;
  }
  rec["text"] = sentence.text;
  json tokens = json::array();
  for (const Token &t : sentence.tokens) {
    tokens.push_back({{"i", t.index},
                      {"text", t.text},
                      {"pos", PosName(t.pos)},
                      {"head", t.head},
                      {"deprel", DepRelName(t.deprel)},
                      {"start", t.char_start},
                      {"end", t.char_end}});
  }
  rec["tokens"] = std::move(tokens);
  json entities = json::array();
  for (const EntityMention &e : sentence.entities) {
    entities.push_back({{"start", e.char_start},
                        {"end", e.char_end},
                        {"text", e.text},
                        {"etype", EntityTypeName(e.etype)}});
  }
  rec["entities"] = std::move(entities);
  json labels = json::array();
  for (const GoldLabel &g : gold) {
    if (g.sentence_id != sentence.sentence_id) continue;
    labels.push_back({{"entity_start", g.entity_char_start},
                      {"entity_text", g.entity_text},
                      {"keys", g.keys}});
  }
  rec["gold"] = std::move(labels);
  return rec;
}

void WriteParsedJsonl(const std::vector<Document> &docs, std::ostream &out) {
  for (const Document &doc : docs) {
    for (const ParsedSentence &s : doc.sentences) {
      out << SentenceToJson(s, doc.gold).dump() << "\n";
    }
  }
}

}  // namespace openkv
