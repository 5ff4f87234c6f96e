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

#ifndef OPENKV_PHRASE_GEN_H_
#define OPENKV_PHRASE_GEN_H_

#include <string>
#include <string_view>
#include <vector>

#include "openkv/corpus.h"

namespace openkv {

enum class PhraseKind { kSimple, kComplex };

std::string_view PhraseKindName(PhraseKind kind);

// A candidate entity description built from a dependency parse.
struct NounPhrase {
  std::string text;                // space-joined token texts
  PhraseKind kind = PhraseKind::kSimple;
  std::vector<int> token_indices;  // strictly increasing
  int head_index = 0;  // governing noun (simple) or preposition (complex)
  int order_rank = 0;

  bool operator==(const NounPhrase &) const = default;
};

// Simple noun phrases: a noun or pronoun in subject/object position preceded
// by its compound and adjective children. A head with no such children does
// not form a phrase. Phrases touching an entity token are dropped.
std::vector<NounPhrase> SimplePhrases(const ParsedSentence &sentence);

// Complex noun phrases: for each preposition governed by a noun, the
// governor's modified form, the preposition, then every nominal right child
// of the preposition in its modified form.
std::vector<NounPhrase> ComplexPhrases(const ParsedSentence &sentence);

// Simple then complex, de-duplicated by text (first occurrence wins), with
// order_rank assigned 0..n-1.
std::vector<NounPhrase> AllPhrases(const ParsedSentence &sentence);

}  // namespace openkv

#endif  // OPENKV_PHRASE_GEN_H_
