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

#include "openkv/phrase_gen.h"

#include <algorithm>
#include <unordered_set>

namespace openkv {

namespace {

bool IsModifier(const Token &t) {
  return t.pos == Pos::kAdj || t.deprel == DepRel::kCompound;
}

// Appends `head` and its compound/adjective children, in sentence order.
// Returns false when the head has no such children.
bool AppendNounGroup(const ParsedSentence &s, int head, std::vector<int> *out) {
  bool modified = false;
  bool placed = false;
  for (int c : s.Children(head)) {
    if (!IsModifier(s.tokens[c])) continue;
    if (!placed && c > head) {
      out->push_back(head);
      placed = true;
    }
    out->push_back(c);
    modified = true;
  }
  if (!placed) out->push_back(head);
  return modified;
}

bool TouchesEntity(const std::vector<int> &indices,
                   const std::vector<bool> &entity_mask) {
  return std::any_of(indices.begin(), indices.end(),
                     [&](int i) { return entity_mask[i]; });
}

NounPhrase MakePhrase(const ParsedSentence &s, PhraseKind kind,
                      std::vector<int> indices, int head) {
  NounPhrase p;
  p.kind = kind;
  p.head_index = head;
  for (size_t k = 0; k < indices.size(); ++k) {
    if (k > 0) p.text += ' ';
    p.text += s.tokens[indices[k]].text;
  }
  p.token_indices = std::move(indices);
  return p;
}

}  // namespace

std::string_view PhraseKindName(PhraseKind kind) {
  return kind == PhraseKind::kSimple ? "SIMPLE" : "COMPLEX";
}

std::vector<NounPhrase> SimplePhrases(const ParsedSentence &sentence) {
  std::vector<NounPhrase> phrases;
  std::vector<bool> entity_mask = sentence.EntityTokenMask();
  for (const Token &t : sentence.tokens) {
    if (!IsNominal(t.pos) || !IsArgument(t.deprel)) continue;
    std::vector<int> indices;
    if (!AppendNounGroup(sentence, t.index, &indices)) continue;
    if (TouchesEntity(indices, entity_mask)) continue;
    phrases.push_back(
        MakePhrase(sentence, PhraseKind::kSimple, std::move(indices), t.index));
  }
  return phrases;
}

std::vector<NounPhrase> ComplexPhrases(const ParsedSentence &sentence) {
  std::vector<NounPhrase> phrases;
  std::vector<bool> entity_mask = sentence.EntityTokenMask();
  for (const Token &prep : sentence.tokens) {
    if (prep.pos != Pos::kAdp || prep.head == prep.index) continue;
    const Token &governor = sentence.tokens[prep.head];
    if (!IsNominal(governor.pos)) continue;

    std::vector<int> indices;
    AppendNounGroup(sentence, governor.index, &indices);
    indices.push_back(prep.index);
    for (int r : sentence.Children(prep.index)) {
      if (r <= prep.index || !IsNominal(sentence.tokens[r].pos)) continue;
      AppendNounGroup(sentence, r, &indices);
    }
    if (indices.size() <= 1 || TouchesEntity(indices, entity_mask)) continue;
    // A preposition governed by a following noun, or modifiers straddling
    // the preposition, would interleave; such phrases are skipped.
    if (!std::is_sorted(indices.begin(), indices.end()) ||
        std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
      continue;
    }
    phrases.push_back(MakePhrase(sentence, PhraseKind::kComplex,
                                 std::move(indices), prep.index));
  }
  return phrases;
}

std::vector<NounPhrase> AllPhrases(const ParsedSentence &sentence) {
  std::vector<NounPhrase> all = SimplePhrases(sentence);
  std::vector<NounPhrase> complex = ComplexPhrases(sentence);
  all.insert(all.end(), std::make_move_iterator(complex.begin()),
             std::make_move_iterator(complex.end()));

  std::vector<NounPhrase> out;
  std::unordered_set<std::string> seen;
  for (NounPhrase &p : all) {
    if (!seen.insert(p.text).second) continue;
    p.order_rank = static_cast<int>(out.size());
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace openkv
