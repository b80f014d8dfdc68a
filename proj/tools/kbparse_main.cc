// Copyright 2026 The kbparse Authors.
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

// kbparse: build-kb, parse, learn, iterate, serve.

#include <csignal>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "kbparse/candidate.h"
#include "kbparse/config.h"
#include "kbparse/error.h"
#include "kbparse/knowledge_base.h"
#include "kbparse/parse_json.h"
#include "kbparse/pipeline.h"
#include "kbparse/pos_tags.h"
#include "kbparse/service.h"
#include "kbparse/text.h"

namespace kbparse {
namespace {

ReviewService *g_service = nullptr;

void HandleSignal(int) {
  if (g_service != nullptr) g_service->Stop();
}

Config ConfigOrDefault(const std::string &path) {
  Config config = path.empty() ? Config{} : LoadConfig(path);
  RegisterExtraTags(config.extra_tags);
  return config;
}

std::string CountsLine(const std::array<size_t, kCandidateKindCount> &counts) {
  std::string out;
  for (size_t k = 0; k < kCandidateKindCount; ++k) {
    if (k > 0) out += ' ';
    out += std::string(CandidateKindName(static_cast<CandidateKind>(k))) + "=" +
           std::to_string(counts[k]);
  }
  return out;
}

int BuildKb(const std::string &in, const std::string &out) {
  KnowledgeBase kb = KnowledgeBase::Load(in);
  for (const auto &cycle : kb.FindCycles()) {
    std::string ids;
    for (ObjectId id : cycle) ids += (ids.empty() ? "" : ",") + std::to_string(id.value);
    spdlog::warn("belongs_to cycle among concepts {}", ids);
  }
  kb.Save(out);
  std::cout << "concepts=" << kb.concepts().size()
            << " methods=" << kb.methods().size()
            << " words=" << kb.word_count()
            << " relations=" << kb.relations().size() << "\n";
  return 0;
}

int Parse(const std::string &kb_dir, const std::string &grammar_dir,
          const std::string &corpus_path, const std::string &mode,
          const std::string &out, const std::string &config_path, size_t jobs) {
  Config config = ConfigOrDefault(config_path);
  if (!mode.empty()) {
    config.parse.mode = mode == "exhaustive" ? ParseMode::kExhaustive : ParseMode::kFast;
  }
  if (jobs > 0) config.jobs = jobs;
  KnowledgeBase kb = KnowledgeBase::Load(kb_dir);
  GrammarBase gb = GrammarBase::Load(grammar_dir, kb);
  std::vector<CorpusLine> corpus = ReadCorpus(corpus_path);

  const auto start = std::chrono::steady_clock::now();
  ParsedCorpus parsed = ParseCorpus(kb, gb, corpus, config.parse, config.jobs);
  WriteFileAtomic(out, ParsedCorpusToJsonl(parsed));
  IterationReport report = Summarize(parsed);
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << ReportToJson(report).dump() << "\n";
  if (parsed.lines > 0 && parsed.skipped == parsed.lines) {
    spdlog::error("every corpus line was malformed");
    return 1;
  }
  return 0;
}

int Learn(const std::string &kb_dir, const std::string &grammar_dir,
          const std::string &parses_path, const std::string &config_path,
          const std::string &out) {
  Config config = ConfigOrDefault(config_path);
  KnowledgeBase kb = KnowledgeBase::Load(kb_dir);
  GrammarBase gb = GrammarBase::Load(grammar_dir, kb);

  std::vector<LearnSubsentence> input;
  size_t skipped = 0;
  for (const CorpusLine &line : ReadCorpus(parses_path)) {
    try {
      for (LearnSubsentence &s : LearnInputFromJsonLine(kb, line.text)) {
        input.push_back(std::move(s));
      }
    } catch (const Error &e) {
      ++skipped;
      spdlog::warn("{}:{}: skipped: {}", parses_path, line.line, e.what());
    }
  }

  CandidateStore store = CandidateStore::Load(out);
  uint64_t iteration = 0;
  for (const CandidateRule &c : store.candidates()) {
    iteration = std::max(iteration, c.created_at);
  }
  std::vector<CandidateRule> discovered = DiscoverAll(kb, gb, input, config.learner);
  std::vector<uint64_t> added = store.Merge(std::move(discovered), iteration + 1);
  store.Save(out);

  std::array<size_t, kCandidateKindCount> counts{};
  for (uint64_t id : added) ++counts[static_cast<size_t>(store.Find(id)->kind())];
  std::cout << CountsLine(counts) << "\n";
  if (skipped > 0) spdlog::warn("{} malformed parse line(s) skipped", skipped);
  return 0;
}

int Iterate(const std::string &kb_dir, const std::string &grammar_dir,
            const std::string &corpus_path, const std::string &config_path,
            int rounds, std::string candidates_path) {
  Config config = ConfigOrDefault(config_path);
  if (candidates_path.empty()) {
    candidates_path = (std::filesystem::path(grammar_dir) / "candidates.jsonl").string();
  }
  if (rounds <= 0) return 0;
  Workspace ws = Workspace::Open(kb_dir, grammar_dir, candidates_path);
  std::vector<CorpusLine> corpus = ReadCorpus(corpus_path);
  for (int r = 0; r < rounds; ++r) {
    ws.ReloadCandidates();
    size_t applied = ws.ApplyAccepted();
    if (applied > 0) spdlog::info("applied {} accepted candidate(s)", applied);
    IterationReport report = ws.RunRound(corpus, config);
    std::cout << ReportToJson(report).dump() << std::endl;
  }
  return 0;
}

int Serve(const std::string &kb_dir, const std::string &grammar_dir,
          const std::string &candidates_path, const std::string &bind,
          const std::string &corpus_path, const std::string &config_path) {
  Config config = ConfigOrDefault(config_path);
  size_t colon = bind.rfind(':');
  uint64_t port = 0;
  if (colon == std::string::npos || !ParseUint(bind.substr(colon + 1), &port) ||
      port > 65535) {
    throw Error(ErrorCode::kConfig, "--bind must be HOST:PORT, got '" + bind + "'");
  }
  const std::string host = bind.substr(0, colon);

  std::optional<std::filesystem::path> corpus;
  if (!corpus_path.empty()) corpus = corpus_path;
  ReviewService service(Workspace::Open(kb_dir, grammar_dir, candidates_path),
                        std::move(config), corpus);
  int bound = service.Bind(host, static_cast<int>(port));
  if (bound < 0) {
    spdlog::error("cannot bind {}", bind);
    return 1;
  }
  g_service = &service;
  std::signal(SIGINT, HandleSignal);
  std::signal(SIGTERM, HandleSignal);
  spdlog::info("serving on {}:{}", host, bound);
  std::cout << "listening on " << host << ":" << bound << std::endl;
  bool ok = service.Serve();
  g_service = nullptr;
  return ok ? 0 : 1;
}

}  // namespace
}  // namespace kbparse

int main(int argc, char **argv) {
  using namespace kbparse;
  spdlog::set_default_logger(spdlog::stderr_color_mt("kbparse"));

  CLI::App app{"Knowledge-base constrained rule parser"};
  app.require_subcommand(1);

  std::string in, out, kb, grammar, corpus, mode, config, parses, candidates, bind;
  size_t jobs = 0;
  int rounds = 1;

  auto *build = app.add_subcommand("build-kb", "Validate, lint and re-save a knowledge base");
  build->add_option("--in", in, "Input TSV directory")->required();
  build->add_option("--out", out, "Output directory")->required();

  auto *parse = app.add_subcommand("parse", "Parse a corpus to JSON lines");
  parse->add_option("--kb", kb)->required();
  parse->add_option("--grammar", grammar)->required();
  parse->add_option("--corpus", corpus)->required();
  parse->add_option("--mode", mode)->check(CLI::IsMember({"fast", "exhaustive"}));
  parse->add_option("--out", out)->required();
  parse->add_option("--config", config);
  parse->add_option("--jobs", jobs, "Worker threads");

  auto *learn = app.add_subcommand("learn", "Mine candidate rules from parse output");
  learn->add_option("--kb", kb)->required();
  learn->add_option("--grammar", grammar)->required();
  learn->add_option("--parses", parses)->required();
  learn->add_option("--config", config)->required();
  learn->add_option("--out", out, "Candidates file, appended to")->required();

  auto *iterate = app.add_subcommand("iterate", "Run parse/learn rounds");
  iterate->add_option("--kb", kb)->required();
  iterate->add_option("--grammar", grammar)->required();
  iterate->add_option("--corpus", corpus)->required();
  iterate->add_option("--config", config)->required();
  iterate->add_option("--rounds", rounds)->required()->check(CLI::NonNegativeNumber);
  iterate->add_option("--candidates", candidates,
                      "Candidates file (default: GRAMMAR/candidates.jsonl)");

  auto *serve = app.add_subcommand("serve", "Serve the review API");
  serve->add_option("--kb", kb)->required();
  serve->add_option("--grammar", grammar)->required();
  serve->add_option("--candidates", candidates)->required();
  serve->add_option("--bind", bind)->required();
  serve->add_option("--corpus", corpus, "Corpus for POST /iterate");
  serve->add_option("--config", config);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) return BuildKb(in, out);
    if (*parse) return Parse(kb, grammar, corpus, mode, out, config, jobs);
    if (*learn) return Learn(kb, grammar, parses, config, out);
    if (*iterate) return Iterate(kb, grammar, corpus, config, rounds, candidates);
    if (*serve) return Serve(kb, grammar, candidates, bind, corpus, config);
  } catch (const Error &e) {
    spdlog::error("{} error: {}", ErrorCodeName(e.code()), e.what());
    return 1;
  }
  return 1;
}
