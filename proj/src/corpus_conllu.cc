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

// CoNLL-U reader. Columns: ID FORM LEMMA UPOS XPOS FEATS HEAD DEPREL DEPS
// MISC. Heads are 1-based with 0 for the root; they are rebased to 0-based
// with the root pointing at itself. Character offsets come from a
// TokenRange=start:end MISC attribute when present, otherwise by aligning
// forms against the "# text" comment.

#include <sstream>

#include "corpus_internal.h"
#include "openkv/utf8.h"

namespace openkv {

using nlohmann::json;

namespace {

std::vector<std::string> SplitTabs(const std::string &line) {
  std::vector<std::string> cols;
  std::stringstream ss(line);
  std::string col;
  while (std::getline(ss, col, '\t')) cols.push_back(col);
  return cols;
}

bool ParseInt(const std::string &s, int *out) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) return false;
    *out = v;
    return true;
  } catch (const std::exception &) {
    return false;
  }
}

// Value of `key=` in a |-separated MISC column.
std::optional<std::string> MiscValue(const std::string &misc,
                                     const std::string &key) {
  std::stringstream ss(misc);
  std::string item;
  while (std::getline(ss, item, '|')) {
    if (item.rfind(key + "=", 0) == 0) return item.substr(key.size() + 1);
  }
  return std::nullopt;
}

struct Block {
  int first_line = 0;
  std::string sent_id;
  std::string text;
  bool has_text = false;
  std::string entities_json;
  struct Row {
    int line;
    std::vector<std::string> cols;
  };
  std::vector<Row> rows;
};

class ConlluParser {
 public:
  ConlluParser(const std::string &source) : source_(source) {}

  std::vector<ParsedSentence> Parse(std::istream &in, std::vector<int> *lines) {
    std::vector<ParsedSentence> out;
    Block block;
    std::string raw;
    int line = 0;
    auto flush = [&]() {
      if (!block.rows.empty()) {
        out.push_back(Build(block, out.size()));
        lines->push_back(block.first_line);
      }
      block = Block();
    };
    while (std::getline(in, raw)) {
      ++line;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      if (raw.empty()) {
        flush();
        continue;
      }
      if (block.first_line == 0) block.first_line = line;
      if (raw[0] == '#') {
        Comment(raw, &block);
        continue;
      }
      auto cols = SplitTabs(raw);
      if (cols.size() != 10) {
        throw CorpusError(source_, line, "columns",
                          "expected 10 tab-separated columns");
      }
      // Multiword ranges and empty nodes carry no syntax of their own.
      if (cols[0].find_first_of("-.") != std::string::npos) continue;
      block.rows.push_back({line, std::move(cols)});
    }
    flush();
    return out;
  }

 private:
  void Comment(const std::string &raw, Block *block) {
    auto eq = raw.find('=');
    if (eq == std::string::npos) return;
    auto trim = [](std::string s) {
      size_t b = s.find_first_not_of(" \t");
      size_t e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(raw.substr(1, eq - 1));
    std::string value = trim(raw.substr(eq + 1));
    if (key == "newdoc id" || key == "doc_id") {
      document_id_ = value;
      paragraph_id_.clear();
    } else if (key == "newpar id" || key == "paragraph_id") {
      paragraph_id_ = value;
    } else if (key == "sent_id") {
      block->sent_id = value;
    } else if (key == "text") {
      block->text = value;
      block->has_text = true;
    } else if (key == "entities") {
      block->entities_json = value;
    }
  }

  ParsedSentence Build(const Block &block, size_t ordinal) {
    ParsedSentence s;
    s.document_id = document_id_.empty() ? "default" : document_id_;
    s.paragraph_id = paragraph_id_;
    s.sentence_id =
        block.sent_id.empty() ? std::to_string(ordinal + 1) : block.sent_id;

    if (block.has_text) {
      s.text = block.text;
    } else {
      for (const auto &row : block.rows) {
        s.text += row.cols[1];
        auto space = MiscValue(row.cols[9], "SpaceAfter");
        if (!space || *space != "No") s.text += ' ';
      }
      while (!s.text.empty() && s.text.back() == ' ') s.text.pop_back();
    }

    int cursor = 0;
    for (size_t i = 0; i < block.rows.size(); ++i) {
      const auto &row = block.rows[i];
      auto fail = [&](const std::string &field, const std::string &message) {
        throw CorpusError(source_, row.line, field, message);
      };
      Token t;
      t.index = static_cast<int>(i);
      int id = 0;
      if (!ParseInt(row.cols[0], &id) || id != static_cast<int>(i) + 1) {
        fail("ID", "token ids must run 1..n");
      }
      t.text = row.cols[1];
      t.pos = ParsePos(row.cols[3]);
      int head = 0;
      if (!ParseInt(row.cols[6], &head)) fail("HEAD", "expected an integer");
      t.head = head == 0 ? t.index : head - 1;
      t.deprel = NormalizeDepRel(row.cols[7]);

      if (auto range = MiscValue(row.cols[9], "TokenRange")) {
        auto colon = range->find(':');
        if (colon == std::string::npos ||
            !ParseInt(range->substr(0, colon), &t.char_start) ||
            !ParseInt(range->substr(colon + 1), &t.char_end)) {
          fail("MISC", "malformed TokenRange");
        }
      } else {
        auto found = FindChars(s.text, t.text, cursor);
        if (!found) fail("FORM", "form not found in sentence text");
        t.char_start = *found;
        t.char_end = *found + CharLength(t.text);
      }
      cursor = t.char_end;
      s.tokens.push_back(std::move(t));
    }

    if (!block.entities_json.empty()) {
      json entities;
      try {
        entities = json::parse(block.entities_json);
      } catch (const json::parse_error &e) {
        throw CorpusError(source_, block.first_line, "entities",
                          std::string("invalid JSON: ") + e.what());
      }
      if (!entities.is_array()) {
        throw CorpusError(source_, block.first_line, "entities",
                          "expected an array");
      }
      for (size_t k = 0; k < entities.size(); ++k) {
        const json &e = entities[k];
        std::string path = "entities[" + std::to_string(k) + "]";
        try {
          auto type = ParseEntityType(e.at("etype").get<std::string>());
          if (!type) continue;
          EntityMention m;
          m.sentence_id = s.sentence_id;
          m.char_start = e.at("start").get<int>();
          m.char_end = e.at("end").get<int>();
          m.text = e.at("text").get<std::string>();
          m.etype = *type;
          s.entities.push_back(std::move(m));
        } catch (const json::exception &ex) {
          throw CorpusError(source_, block.first_line, path, ex.what());
        }
      }
    }
    ValidateSentence(s, source_, block.first_line);
    return s;
  }

  const std::string &source_;
  std::string document_id_;
  std::string paragraph_id_;
};

}  // namespace

std::vector<ParsedSentence> ParseConlluSentences(std::istream &in,
                                                 const std::string &source,
                                                 std::vector<int> *lines) {
  return ConlluParser(source).Parse(in, lines);
}

}  // namespace openkv
