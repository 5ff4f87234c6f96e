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

// Command-line driver.
//
//   openkv extract  --in corpus.jsonl --reader remote --endpoint URL --out pairs.jsonl
//   openkv ablate   --in corpus.jsonl --reader remote --endpoint URL --out pairs.jsonl
//   openkv evaluate --pred pairs.jsonl --gold corpus.jsonl --report report.json
//   openkv stats    --in corpus.jsonl
//
// Exit status: 0 success, 1 usage error, 2 runtime error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "openkv/corpus.h"
#include "openkv/eval.h"
#include "openkv/pipeline.h"

namespace {

constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExtractFlags {
  std::string in;
  std::string format = "parsed-jsonl";
  std::string reader = "remote";
  std::string endpoint;
  std::string fixture;
  int timeout_ms = 0;
  int retries = -1;
  int parallelism = 0;
  std::string out;
  std::string diagnostics;
  std::string config;
  std::string debug;
};

openkv::CorpusFormat FormatOrThrow(const std::string &name) {
  auto format = openkv::ParseCorpusFormat(name);
  if (!format) throw UsageError("unknown format: " + name);
  return *format;
}

// Writes through a temporary so a failed run leaves no partial file.
void WriteAtomically(const std::string &path, const std::string &content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("cannot write " + path);
    }
  }
  std::filesystem::rename(tmp, path);
}

openkv::PipelineConfig BuildConfig(const ExtractFlags &flags,
                                   const CLI::App &cmd, bool ablation) {
  openkv::PipelineConfig config;
  if (!flags.config.empty()) {
    std::ifstream in(flags.config);
    if (!in) throw UsageError("cannot open config " + flags.config);
    try {
      config = openkv::PipelineConfig::FromJson(nlohmann::json::parse(in));
    } catch (const std::exception &e) {
      throw UsageError("config " + flags.config + ": " + e.what());
    }
  }
  bool reader_given = cmd.count("--reader") > 0;
  if (reader_given || flags.config.empty()) {
    auto kind = openkv::ParseReaderKind(flags.reader);
    if (!kind) throw UsageError("unknown reader: " + flags.reader);
    config.reader.kind = *kind;
  }
  if (!flags.endpoint.empty()) {
    config.reader.endpoint = flags.endpoint;
  } else if (config.reader.endpoint.empty()) {
    if (const char *env = std::getenv("READER_ENDPOINT")) {
      config.reader.endpoint = env;
    }
  }
  if (!flags.fixture.empty()) config.reader.fixture_path = flags.fixture;
  if (flags.timeout_ms > 0) config.reader.timeout_ms = flags.timeout_ms;
  if (flags.retries >= 0) config.reader.retries = flags.retries;
  if (!flags.diagnostics.empty()) config.diagnostics_path = flags.diagnostics;
  if (ablation) config.ablation_no_phrases = true;

  if (flags.parallelism > 0) {
    config.parallelism = flags.parallelism;
  } else if (flags.config.empty() || cmd.count("--parallelism") > 0) {
    int cpus = static_cast<int>(std::thread::hardware_concurrency());
    config.parallelism = std::max(1, cpus);
    if (config.reader.kind == openkv::ReaderKind::kRemote) {
      config.parallelism = std::min(config.parallelism, 8);
    }
  }
  config.trace = !flags.debug.empty();
  try {
    config.Validate();
  } catch (const std::invalid_argument &e) {
    throw UsageError(e.what());
  }
  return config;
}

int RunExtract(const ExtractFlags &flags, const CLI::App &cmd, bool ablation) {
  openkv::PipelineConfig config = BuildConfig(flags, cmd, ablation);
  auto docs = openkv::LoadCorpus(flags.in, FormatOrThrow(flags.format));
  openkv::RunResult result = openkv::RunPipeline(docs, config);

  std::ostringstream out;
  openkv::WriteExtractions(result.pairs, out);
  WriteAtomically(flags.out, out.str());
  if (!flags.debug.empty()) {
    WriteAtomically(flags.debug,
                    openkv::TraceToJson(result.trace).dump(2) + "\n");
  }
  std::cerr << result.pairs.size() << " pairs from "
            << result.diagnostics.sentences.size() << " sentences, "
            << result.diagnostics.total_questions() << " questions, "
            << result.diagnostics.reader_errors() << " reader errors\n";
  return 0;
}

int RunEvaluate(const std::string &pred, const std::string &gold,
                const std::string &gold_format, const std::string &report) {
  std::ifstream in(pred);
  if (!in) throw std::runtime_error("cannot open " + pred);
  auto predictions = openkv::ReadExtractions(in, pred);
  auto docs = openkv::LoadCorpus(gold, FormatOrThrow(gold_format));
  auto tallies = openkv::ScoreDocuments(docs, predictions);
  openkv::EvalReport result = openkv::Aggregate(tallies);
  if (!report.empty()) {
    WriteAtomically(report, openkv::ReportToJson(result).dump(2) + "\n");
  }
  std::cout << openkv::FormatReport(result);
  return 0;
}

int RunStats(const std::string &path, const std::string &format, bool json) {
  auto docs = openkv::LoadCorpus(path, FormatOrThrow(format));
  openkv::StatsReport report = openkv::CorpusStats(docs);
  if (json) {
    std::cout << openkv::StatsToJson(report).dump(2) << "\n";
  } else {
    std::cout << openkv::FormatStats(report);
  }
  return 0;
}

void AddExtractOptions(CLI::App *cmd, ExtractFlags *flags) {
  cmd->add_option("--in", flags->in, "Input corpus")->required();
  cmd->add_option("--format", flags->format,
                  "Corpus format: parsed-jsonl or conllu-plus");
  cmd->add_option("--reader", flags->reader,
                  "Reader backend: remote, fixture or nearest");
  cmd->add_option("--endpoint", flags->endpoint,
                  "Reader service URL (default: $READER_ENDPOINT)");
  cmd->add_option("--fixture", flags->fixture, "Reader fixture JSONL");
  cmd->add_option("--timeout-ms", flags->timeout_ms, "Per-request timeout");
  cmd->add_option("--retries", flags->retries, "Retries per request");
  cmd->add_option("--parallelism", flags->parallelism, "Worker count");
  cmd->add_option("--out", flags->out, "Output extraction JSONL")->required();
  cmd->add_option("--diagnostics", flags->diagnostics,
                  "Write run diagnostics JSON");
  cmd->add_option("--config", flags->config, "Pipeline config JSON");
  cmd->add_option("--debug", flags->debug,
                  "Write per-sentence phrases and questions JSON");
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Zero-shot key/value extraction over parsed sentences"};
  app.require_subcommand(1, 1);

  ExtractFlags extract_flags;
  CLI::App *extract = app.add_subcommand("extract", "Extract key/value pairs");
  AddExtractOptions(extract, &extract_flags);

  ExtractFlags ablate_flags;
  CLI::App *ablate = app.add_subcommand(
      "ablate", "Extract using only entity questions (no phrase generation)");
  AddExtractOptions(ablate, &ablate_flags);

  std::string pred, gold, gold_format = "parsed-jsonl", report;
  CLI::App *evaluate =
      app.add_subcommand("evaluate", "Score extractions against gold labels");
  evaluate->add_option("--pred", pred, "Extraction JSONL")->required();
  evaluate->add_option("--gold", gold, "Gold-labelled corpus")->required();
  evaluate->add_option("--gold-format", gold_format, "Gold corpus format");
  evaluate->add_option("--report", report, "Write JSON report");

  std::string stats_in, stats_format = "parsed-jsonl";
  bool stats_json = false;
  CLI::App *stats = app.add_subcommand("stats", "Corpus statistics");
  stats->add_option("--in", stats_in, "Input corpus")->required();
  stats->add_option("--format", stats_format, "Corpus format");
  stats->add_flag("--json", stats_json, "Print JSON instead of a table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*extract) return RunExtract(extract_flags, *extract, false);
    if (*ablate) return RunExtract(ablate_flags, *ablate, true);
    if (*evaluate) return RunEvaluate(pred, gold, gold_format, report);
    if (*stats) return RunStats(stats_in, stats_format, stats_json);
  } catch (const UsageError &e) {
    std::cerr << "openkv: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception &e) {
    std::cerr << "openkv: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsageError;
}
