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

#include "openkv/utf8.h"

#include <algorithm>

namespace openkv {

namespace {

// Continuation bytes look like 10xxxxxx. Malformed input is treated
// byte-per-character rather than rejected.
bool IsContinuation(unsigned char c) { return (c & 0xC0) == 0x80; }

}  // namespace

CharIndex::CharIndex(std::string_view text) : text_(text) {
  byte_offsets_.reserve(text.size() + 1);
  for (size_t i = 0; i < text.size(); ++i) {
    if (!IsContinuation(static_cast<unsigned char>(text[i])) || i == 0) {
      byte_offsets_.push_back(i);
    }
  }
  byte_offsets_.push_back(text.size());
}

std::optional<int> CharIndex::char_position(size_t byte) const {
  auto it = std::lower_bound(byte_offsets_.begin(), byte_offsets_.end(), byte);
  if (it == byte_offsets_.end() || *it != byte) return std::nullopt;
  return static_cast<int>(it - byte_offsets_.begin());
}

std::string_view CharIndex::substr(int start, int end) const {
  size_t b = byte_offsets_[start];
  size_t e = byte_offsets_[end];
  return text_.substr(b, e - b);
}

int CharLength(std::string_view text) {
  int n = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    if (i == 0 || !IsContinuation(static_cast<unsigned char>(text[i]))) ++n;
  }
  return n;
}

std::optional<int> FindChars(std::string_view haystack, std::string_view needle,
                             int from) {
  CharIndex index(haystack);
  if (from < 0 || from > index.size()) return std::nullopt;
  size_t pos = haystack.find(needle, index.byte_offset(from));
  while (pos != std::string_view::npos) {
    if (auto c = index.char_position(pos)) return c;
    pos = haystack.find(needle, pos + 1);
  }
  return std::nullopt;
}

}  // namespace openkv
