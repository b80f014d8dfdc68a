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

// The encoder. Words are merged bottom-up into phrases by phrase patterns;
// the residual element sequence is classified by its parse string against
// the subsentence patterns, whose meaning yields nsubj/dobj relations between
// core words.
//
// Two strategies share the same replacement rule:
//  - single recursion: try patterns in grammar order and windows left to
//    right; apply the first match, then restart from the first pattern;
//  - exhaustive: depth-first search over every (pattern, window) choice,
//    memoized on the element sequence, returning all terminal states.
//
// Everything here is a pure function of immutable knowledge-base and grammar
// snapshots.

#ifndef KBPARSE_PARSER_H_
#define KBPARSE_PARSER_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kbparse/element.h"
#include "kbparse/grammar.h"
#include "kbparse/knowledge_base.h"
#include "kbparse/segmenter.h"

namespace kbparse {

struct ExtractedRelation {
  RelationType type = RelationType::kNsubj;
  std::string head;  // core word
  std::string tail;  // core word
  size_t head_index = 0;
  size_t tail_index = 0;

  bool operator==(const ExtractedRelation &) const = default;
};

enum class ParseStatus { kParsed, kUnparsed };

struct SubsentenceParse {
  std::string text;
  std::vector<Element> elements;
  std::string parse_str;
  std::optional<SubsentencePattern> matched_pattern;
  std::vector<ExtractedRelation> relations;
  ParseStatus status = ParseStatus::kUnparsed;
  // half_sentence subsentences inherit a missing component from elsewhere;
  // the source is left unresolved.
  bool unresolved_inheritance = false;
  // Some relation pairs a concept with a method the knowledge base says it
  // cannot take part in.
  bool kb_conflict = false;

  bool operator==(const SubsentenceParse &) const = default;
};

struct SentenceParse {
  std::string text;
  std::vector<SubsentenceParse> subsentences;
  double coverage = 0.0;
  // Number of subsentences that exceeded exhaustive limits and were parsed
  // with single recursion instead.
  size_t fallbacks = 0;
};

struct ExhaustiveLimits {
  size_t max_elements = 10;
  size_t max_derivations = 10000;
  size_t max_states = 1000000;
};

enum class ParseMode { kFast, kExhaustive };

bool MatchFeature(const KnowledgeBase &kb, const Feature &feature,
                  const Element &element);

// Matches |pattern| against elements[start, start + features). Throws
// std::out_of_range when the window does not fit.
std::optional<Element> MatchPhrasePattern(const KnowledgeBase &kb,
                                          const PhrasePattern &pattern,
                                          const std::vector<Element> &elements,
                                          size_t start,
                                          std::string_view joiner = " ");

// Returns the parse string and the accepted pattern it selects, if any.
std::pair<std::string, const SubsentencePattern *> ClassifySubsentence(
    const GrammarBase &gb, const std::vector<Element> &elements);

// Throws kIntegrity if a relation index is out of range.
std::vector<ExtractedRelation> ExtractRelations(
    const std::vector<Element> &elements, const SubsentencePattern &pattern);

// Classifies |elements| and extracts relations into a finished parse.
SubsentenceParse FinishParse(const KnowledgeBase &kb, const GrammarBase &gb,
                             std::vector<Element> elements);

SubsentenceParse SingleRecursionParse(const KnowledgeBase &kb,
                                      const GrammarBase &gb,
                                      const std::vector<Word> &words,
                                      std::string_view joiner = " ");

// All distinct terminal states, best first: parsed without knowledge-base
// conflicts, parsed with conflicts, unparsed; then fewer elements, then
// parse string, then derivation signature. Throws kResource when |words| is
// longer than max_elements or the search exceeds its limits.
std::vector<SubsentenceParse> ExhaustiveParse(const KnowledgeBase &kb,
                                              const GrammarBase &gb,
                                              const std::vector<Word> &words,
                                              std::string_view joiner = " ",
                                              const ExhaustiveLimits &limits = {});

struct ParseOptions {
  ParseMode mode = ParseMode::kFast;
  ExhaustiveLimits limits;
  std::string delimiters{kDefaultDelimiters};
};

// Split, tokenize and parse whole sentences against one snapshot.
class SentenceParser {
 public:
  SentenceParser(const KnowledgeBase &kb, const GrammarBase &gb,
                 ParseOptions options = {});

  SentenceParse Parse(std::string_view text) const;
  // Uses the record's tokens when present, otherwise segments its text.
  // Throws kFormat on a bad pos tag in the tokens.
  SentenceParse Parse(const CorpusRecord &record) const;

 private:
  SubsentenceParse ParseWords(const std::vector<Word> &words,
                              std::string_view joiner, size_t *fallbacks) const;
  static void Aggregate(SentenceParse *parse);

  const KnowledgeBase &kb_;
  const GrammarBase &gb_;
  ParseOptions options_;
  Segmenter segmenter_;
};

}  // namespace kbparse

#endif  // KBPARSE_PARSER_H_
