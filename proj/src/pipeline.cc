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

#include "kbparse/pipeline.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <thread>
#include <variant>

#include <spdlog/spdlog.h>

#include "kbparse/error.h"
#include "kbparse/parse_json.h"
#include "kbparse/segmenter.h"
#include "kbparse/text.h"

namespace kbparse {
namespace {

struct LineResult {
  std::optional<SentenceParse> parse;
  std::string joiner;
  std::string error;
};

LineResult ParseLine(const SentenceParser &parser, const CorpusLine &line) {
  LineResult result;
  try {
    CorpusRecord record = ParseCorpusLine(line.text);
    result.joiner = std::string(JoinerFor(record.text));
    result.parse = parser.Parse(record);
  } catch (const Error &e) {
    if (e.code() != ErrorCode::kFormat) throw;
    result.error = e.what();
  }
  return result;
}

}  // namespace

std::vector<CorpusLine> ReadCorpus(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfig, "cannot open corpus " + path.string());
  std::vector<CorpusLine> lines;
  std::string text;
  size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    std::string_view trimmed = Trim(text);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    lines.push_back({line_no, std::move(text)});
  }
  return lines;
}

ParsedCorpus ParseCorpus(const KnowledgeBase &kb, const GrammarBase &gb,
                         const std::vector<CorpusLine> &corpus,
                         const ParseOptions &options, size_t jobs) {
  std::vector<LineResult> results(corpus.size());
  jobs = std::clamp<size_t>(jobs, 1, std::max<size_t>(1, corpus.size()));

  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    SentenceParser parser(kb, gb, options);
    try {
      for (size_t i = next++; i < corpus.size(); i = next++) {
        results[i] = ParseLine(parser, corpus[i]);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next = corpus.size();
    }
  };
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> workers;
    for (size_t j = 0; j < jobs; ++j) workers.emplace_back(work);
    for (std::thread &t : workers) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  ParsedCorpus parsed;
  parsed.lines = corpus.size();
  for (size_t i = 0; i < results.size(); ++i) {
    LineResult &r = results[i];
    if (!r.parse) {
      ++parsed.skipped;
      spdlog::warn("corpus line {} skipped: {}", corpus[i].line, r.error);
      continue;
    }
    if (r.parse->fallbacks > 0) {
      spdlog::info("corpus line {}: {} subsentence(s) over exhaustive limits, "
                   "parsed in fast mode",
                   corpus[i].line, r.parse->fallbacks);
      parsed.fallbacks += r.parse->fallbacks;
    }
    parsed.sentences.push_back(std::move(*r.parse));
    parsed.joiners.push_back(std::move(r.joiner));
  }
  return parsed;
}

std::string ParsedCorpusToJsonl(const ParsedCorpus &parsed) {
  std::string out;
  for (const SentenceParse &s : parsed.sentences) {
    out += SentenceParseToJson(s).dump();
    out += '\n';
  }
  return out;
}

std::vector<LearnSubsentence> LearnInput(const KnowledgeBase &kb,
                                         const ParsedCorpus &parsed) {
  std::vector<LearnSubsentence> out;
  for (size_t i = 0; i < parsed.sentences.size(); ++i) {
    for (const SubsentenceParse &sub : parsed.sentences[i].subsentences) {
      out.push_back(ToLearnSubsentence(kb, sub, parsed.joiners[i]));
    }
  }
  return out;
}

bool IterationReport::SameOutcome(const IterationReport &o) const {
  return sentences_total == o.sentences_total &&
         sentences_parsed == o.sentences_parsed &&
         subsentences_total == o.subsentences_total &&
         subsentences_parsed == o.subsentences_parsed &&
         subsentence_coverage == o.subsentence_coverage &&
         candidates_emitted == o.candidates_emitted &&
         skipped_lines == o.skipped_lines && fallbacks == o.fallbacks;
}

IterationReport Summarize(const ParsedCorpus &parsed) {
  IterationReport report;
  report.sentences_total = parsed.sentences.size();
  for (const SentenceParse &s : parsed.sentences) {
    size_t ok = 0;
    for (const SubsentenceParse &sub : s.subsentences) {
      if (sub.status == ParseStatus::kParsed) ++ok;
    }
    report.subsentences_total += s.subsentences.size();
    report.subsentences_parsed += ok;
    if (!s.subsentences.empty() && ok == s.subsentences.size()) {
      ++report.sentences_parsed;
    }
  }
  report.subsentence_coverage =
      report.subsentences_total == 0
          ? 0.0
          : static_cast<double>(report.subsentences_parsed) /
                static_cast<double>(report.subsentences_total);
  report.skipped_lines = parsed.skipped;
  report.fallbacks = parsed.fallbacks;
  return report;
}

nlohmann::ordered_json ReportToJson(const IterationReport &r) {
  nlohmann::ordered_json j;
  j["iteration"] = r.iteration;
  j["sentences_total"] = r.sentences_total;
  j["sentences_parsed"] = r.sentences_parsed;
  j["subsentences_total"] = r.subsentences_total;
  j["subsentences_parsed"] = r.subsentences_parsed;
  j["subsentence_coverage"] = r.subsentence_coverage;
  nlohmann::ordered_json emitted;
  for (size_t k = 0; k < kCandidateKindCount; ++k) {
    emitted[std::string(CandidateKindName(static_cast<CandidateKind>(k)))] =
        r.candidates_emitted[k];
  }
  j["candidates_emitted"] = emitted;
  j["skipped_lines"] = r.skipped_lines;
  j["fallbacks"] = r.fallbacks;
  j["wall_time_seconds"] = r.wall_time_seconds;
  return j;
}

std::array<size_t, kCandidateKindCount> CountByKind(
    const std::vector<CandidateRule> &candidates) {
  std::array<size_t, kCandidateKindCount> counts{};
  for (const CandidateRule &c : candidates) {
    ++counts[static_cast<size_t>(c.kind())];
  }
  return counts;
}

Workspace Workspace::Open(const std::filesystem::path &kb_dir,
                          const std::filesystem::path &grammar_dir,
                          const std::filesystem::path &candidates_path) {
  Workspace ws;
  ws.kb_dir_ = kb_dir;
  ws.grammar_dir_ = grammar_dir;
  ws.candidates_path_ = candidates_path;
  ws.kb_ = KnowledgeBase::Load(kb_dir);
  ws.gb_ = GrammarBase::Load(grammar_dir, ws.kb_);
  ws.ReloadCandidates();
  return ws;
}

void Workspace::ReloadCandidates() {
  candidates_ = CandidateStore::Load(candidates_path_);
  for (const CandidateRule &c : candidates_.candidates()) {
    iteration_ = std::max(iteration_, c.created_at);
  }
}

size_t Workspace::ApplyAccepted() {
  size_t applied = 0;
  bool touched = false;
  for (CandidateRule &c : candidates_.mutable_candidates()) {
    if (c.status != CandidateStatus::kAccepted || c.applied) continue;
    touched = true;
    if (auto note = kbparse::ApplyAccepted(kb_, gb_, c)) {
      spdlog::warn("candidate {} not applied: {}", c.id, *note);
    } else {
      ++applied;
    }
  }
  if (applied > 0) SaveStores();
  if (touched) SaveCandidates();
  return applied;
}

std::optional<std::string> Workspace::Decide(uint64_t id,
                                             const Decision &decision) {
  CandidateRule *c = candidates_.Find(id);
  if (c == nullptr) {
    throw Error(ErrorCode::kNotFound, "no candidate " + std::to_string(id));
  }
  std::optional<std::string> note = ApplyDecision(kb_, gb_, *c, decision);
  if (!note && c->status == CandidateStatus::kAccepted) SaveStores();
  SaveCandidates();
  return note;
}

IterationReport Workspace::RunRound(const std::vector<CorpusLine> &corpus,
                                    const Config &config) {
  const auto start = std::chrono::steady_clock::now();
  ParsedCorpus parsed =
      ParseCorpus(kb_, gb_, corpus, config.parse, config.jobs);
  IterationReport report = Summarize(parsed);
  std::vector<CandidateRule> discovered =
      DiscoverAll(kb_, gb_, LearnInput(kb_, parsed), config.learner);
  report.candidates_emitted = CountByKind(discovered);
  report.iteration = ++iteration_;
  candidates_.Merge(std::move(discovered), iteration_);
  SaveCandidates();
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

void Workspace::SaveStores() const {
  kb_.Save(kb_dir_);
  gb_.Save(grammar_dir_);
}

void Workspace::SaveCandidates() const { candidates_.Save(candidates_path_); }

}  // namespace kbparse
