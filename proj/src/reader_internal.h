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

#ifndef OPENKV_SRC_READER_INTERNAL_H_
#define OPENKV_SRC_READER_INTERNAL_H_

#include <memory>

#include "openkv/reader.h"

namespace openkv {

// Defined in reader_remote.cc so the HTTP client stays out of other units.
std::unique_ptr<Reader> MakeRemoteReader(const ReaderSpec &spec);

}  // namespace openkv

#endif  // OPENKV_SRC_READER_INTERNAL_H_
