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

// Corpus-level drivers behind the command-line tool and the service: parse a
// corpus in parallel with input-ordered output, mine candidates, and run
// parse/learn rounds against stores on disk.

#ifndef KBPARSE_PIPELINE_H_
#define KBPARSE_PIPELINE_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kbparse/candidate.h"
#include "kbparse/config.h"
#include "kbparse/grammar.h"
#include "kbparse/knowledge_base.h"
#include "kbparse/learner.h"
#include "kbparse/parser.h"

namespace kbparse {

struct CorpusLine {
  size_t line = 0;  // 1-based line number in the source file
  std::string text;
};

// Non-blank lines not starting with '#'. Throws kConfig if the file is
// missing.
std::vector<CorpusLine> ReadCorpus(const std::filesystem::path &path);

struct ParsedCorpus {
  // One entry per successfully parsed line, in input order.
  std::vector<SentenceParse> sentences;
  std::vector<std::string> joiners;
  size_t lines = 0;
  size_t skipped = 0;  // malformed lines
  size_t fallbacks = 0;
};

// Parses every line with |jobs| worker threads. Malformed lines are logged
// and counted, never fatal. Output does not depend on |jobs|.
ParsedCorpus ParseCorpus(const KnowledgeBase &kb, const GrammarBase &gb,
                         const std::vector<CorpusLine> &corpus,
                         const ParseOptions &options, size_t jobs);

// Parse output, one JSON object per line.
std::string ParsedCorpusToJsonl(const ParsedCorpus &parsed);

std::vector<LearnSubsentence> LearnInput(const KnowledgeBase &kb,
                                         const ParsedCorpus &parsed);

struct IterationReport {
  uint64_t iteration = 0;
  size_t sentences_total = 0;
  size_t sentences_parsed = 0;  // every subsentence parsed
  size_t subsentences_total = 0;
  size_t subsentences_parsed = 0;
  double subsentence_coverage = 0.0;
  std::array<size_t, kCandidateKindCount> candidates_emitted{};
  size_t skipped_lines = 0;
  size_t fallbacks = 0;
  double wall_time_seconds = 0.0;

  // The fields above except wall time, which varies between runs.
  bool SameOutcome(const IterationReport &other) const;
};

IterationReport Summarize(const ParsedCorpus &parsed);
nlohmann::ordered_json ReportToJson(const IterationReport &report);

// Per-kind counts of |candidates|.
std::array<size_t, kCandidateKindCount> CountByKind(
    const std::vector<CandidateRule> &candidates);

// Knowledge base, grammar and candidates loaded from their files, kept in
// memory and written back after each mutation.
class Workspace {
 public:
  static Workspace Open(const std::filesystem::path &kb_dir,
                        const std::filesystem::path &grammar_dir,
                        const std::filesystem::path &candidates_path);

  const KnowledgeBase &kb() const { return kb_; }
  const GrammarBase &gb() const { return gb_; }
  const CandidateStore &candidates() const { return candidates_; }

  // Re-reads the candidates file, picking up decisions made by editing it.
  void ReloadCandidates();

  // Applies accepted candidates that have not been applied yet and persists
  // the result. Returns the number applied.
  size_t ApplyAccepted();

  // Records a decision on one candidate and persists. Throws kNotFound for
  // an unknown id; see ApplyDecision for the rest.
  std::optional<std::string> Decide(uint64_t id, const Decision &decision);

  // One parse + learn round over |corpus|. New candidates are merged into
  // the store with the next iteration number.
  IterationReport RunRound(const std::vector<CorpusLine> &corpus,
                           const Config &config);

  void SaveStores() const;
  void SaveCandidates() const;

 private:
  std::filesystem::path kb_dir_;
  std::filesystem::path grammar_dir_;
  std::filesystem::path candidates_path_;
  KnowledgeBase kb_;
  GrammarBase gb_;
  CandidateStore candidates_;
  uint64_t iteration_ = 0;
};

}  // namespace kbparse

#endif  // KBPARSE_PIPELINE_H_
