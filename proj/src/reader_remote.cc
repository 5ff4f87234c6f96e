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

#include <chrono>
#include <semaphore>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "reader_internal.h"

namespace openkv {

using nlohmann::json;

namespace {

// Splits "http://host:port/prefix" into the scheme+authority part that
// httplib::Client takes and an optional path prefix.
std::pair<std::string, std::string> SplitEndpoint(const std::string &endpoint) {
  std::string url = endpoint;
  while (!url.empty() && url.back() == '/') url.pop_back();
  size_t scheme = url.find("://");
  size_t path = url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (path == std::string::npos) return {url, ""};
  return {url.substr(0, path), url.substr(path)};
}

class RemoteReader : public Reader {
 public:
  explicit RemoteReader(const ReaderSpec &spec)
      : spec_(spec), slots_(spec.max_in_flight) {
    std::tie(base_, prefix_) = SplitEndpoint(spec.endpoint);
  }

  ReaderAnswer Answer(const Question &question,
                      const ParsedSentence &context) const override {
    json body = {{"question", question.text}, {"context", context.text}};
    std::string payload = body.dump();

    std::string last_error;
    int delay_ms = spec_.backoff_ms;
    for (int attempt = 0; attempt <= spec_.retries; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
        delay_ms *= 2;
      }
      slots_.acquire();
      httplib::Result res = MakeClient().Post(prefix_ + "/answer", payload,
                                              "application/json");
      slots_.release();
      if (!res) {
        last_error = "request failed: " + httplib::to_string(res.error());
        continue;
      }
      if (res->status != 200) {
        last_error = "HTTP status " + std::to_string(res->status);
        continue;
      }
      return Decode(res->body, context.text);
    }
    throw ReaderError("reader " + spec_.endpoint + ": " + last_error);
  }

  void Preflight() const override {
    httplib::Result res = MakeClient().Get(prefix_ + "/health");
    if (!res) {
      throw ReaderError("reader " + spec_.endpoint +
                        " unreachable: " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
      throw ReaderError("reader " + spec_.endpoint + " not ready: HTTP " +
                        std::to_string(res->status));
    }
  }

 private:
  httplib::Client MakeClient() const {
    httplib::Client client(base_);
    auto timeout = std::chrono::milliseconds(spec_.timeout_ms);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    return client;
  }

  ReaderAnswer Decode(const std::string &body,
                      const std::string &context) const {
    ReaderAnswer answer;
    try {
      json rec = json::parse(body);
      answer.text = rec.value("answer", std::string());
      answer.confidence = rec.value("score", 0.0);
      answer.char_start = rec.value("start", -1);
      answer.char_end = rec.value("end", -1);
      answer.empty = rec.value("empty", answer.text.empty());
    } catch (const json::exception &e) {
      throw ReaderError("reader " + spec_.endpoint +
                        ": malformed response: " + e.what());
    }
    if (answer.confidence < 0.0 || answer.confidence > 1.0) {
      throw ReaderError("reader " + spec_.endpoint +
                        ": score outside [0, 1]");
    }
    ReconcileOffsets(context, &answer);
    return answer;
  }

  ReaderSpec spec_;
  std::string base_;
  std::string prefix_;
  mutable std::counting_semaphore<> slots_;
};

}  // namespace

std::unique_ptr<Reader> MakeRemoteReader(const ReaderSpec &spec) {
  return std::make_unique<RemoteReader>(spec);
}

}  // namespace openkv
