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

#ifndef OPENKV_UTF8_H_
#define OPENKV_UTF8_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace openkv {

// All offsets exchanged with the outside world count Unicode scalar values,
// half-open. Internally strings stay UTF-8; this index maps between the two.
class CharIndex {
 public:
  explicit CharIndex(std::string_view text);

  // Number of scalar values in the text.
  int size() const { return static_cast<int>(byte_offsets_.size()) - 1; }

  // Byte offset of character position `pos` (0 <= pos <= size()).
  size_t byte_offset(int pos) const { return byte_offsets_[pos]; }

  // Character position of a byte offset that falls on a character boundary.
  std::optional<int> char_position(size_t byte) const;

  // Substring [start, end) in characters. Caller guarantees bounds.
  std::string_view substr(int start, int end) const;

  bool valid_range(int start, int end) const {
    return start >= 0 && start <= end && end <= size();
  }

 private:
  std::string_view text_;
  std::vector<size_t> byte_offsets_;
};

// Number of scalar values in a UTF-8 string.
int CharLength(std::string_view text);

// Character offset of the first occurrence of `needle` in `haystack` at or
// after character `from`, or nullopt.
std::optional<int> FindChars(std::string_view haystack, std::string_view needle,
                             int from = 0);

}  // namespace openkv

#endif  // OPENKV_UTF8_H_
