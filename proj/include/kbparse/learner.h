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

// Rule discovery over parse results, and application of reviewed
// candidates to the stores.
//
// Discovery never touches the stores; every operation is a deterministic
// function of its inputs, candidate order included.

#ifndef KBPARSE_LEARNER_H_
#define KBPARSE_LEARNER_H_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "kbparse/candidate.h"
#include "kbparse/grammar.h"
#include "kbparse/knowledge_base.h"
#include "kbparse/parser.h"

namespace kbparse {

// One residual element of a parsed subsentence, as the learner sees it.
struct LearnToken {
  std::string value;
  std::string core;  // core word
  std::string pos;
  std::vector<ObjectId> concepts;  // concepts linked to the core word
};

struct LearnSubsentence {
  std::string joiner;  // " " for space-separated text, else ""
  std::string parse_str;
  bool parsed = false;
  std::vector<LearnToken> tokens;

  std::string Text() const;
};

LearnSubsentence ToLearnSubsentence(const KnowledgeBase &kb,
                                    const SubsentenceParse &parse,
                                    std::string_view joiner);

struct LearnerConfig {
  double min_coverage = 0.8;
  double min_precision = 0.5;
  size_t min_members = 3;
  size_t min_freq = 3;
  double cohesion = 0.5;
  size_t window = 2;
  int generalization_levels = 3;
  size_t max_ngram = 3;
  AffixUnit concept_rule_unit = AffixUnit::kToken;
  // Indexed by CandidateKind.
  std::array<bool, kCandidateKindCount> enabled = {true, true, true, true,
                                                   true};

  bool Enabled(CandidateKind kind) const {
    return enabled[static_cast<size_t>(kind)];
  }
};

// Affix rules shared by most members of a concept. Members of a concept are
// the surfaces linked to its direct sub-concepts.
std::vector<CandidateRule> DiscoverConceptRules(const KnowledgeBase &kb,
                                                const GrammarBase &gb,
                                                const LearnerConfig &config);

// Cohesive word n-grams in unparsed subsentences that the lexicon lacks.
std::vector<CandidateRule> DiscoverNewConcepts(
    const KnowledgeBase &kb, const std::vector<LearnSubsentence> &corpus,
    const LearnerConfig &config);

// Words seen next to a frequent anchor word, proposed as a new concept plus
// a two-feature phrase pattern.
std::vector<CandidateRule> DiscoverConceptFeatures(
    const std::vector<LearnSubsentence> &corpus, const LearnerConfig &config);

// Frequent all-NN element trigrams, generalized through the concept
// hierarchy. Within a set of trigrams covering exactly the same windows only
// the least general ones are kept. Uses parsed subsentences too.
std::vector<CandidateRule> DiscoverTrigramPatterns(
    const KnowledgeBase &kb, const GrammarBase &gb,
    const std::vector<LearnSubsentence> &corpus, const LearnerConfig &config);

// Word pairs co-occurring within a window around a frequent word.
std::vector<CandidateRule> DiscoverCooccurPatterns(
    const GrammarBase &gb, const std::vector<LearnSubsentence> &corpus,
    const LearnerConfig &config);

// Frequent parse strings of unparsed subsentences.
std::vector<CandidateRule> DiscoverSubsentencePatterns(
    const GrammarBase &gb, const std::vector<LearnSubsentence> &corpus,
    const LearnerConfig &config);

// All enabled discovery operations, concatenated in kind order.
std::vector<CandidateRule> DiscoverAll(const KnowledgeBase &kb,
                                       const GrammarBase &gb,
                                       const std::vector<LearnSubsentence> &corpus,
                                       const LearnerConfig &config);

struct Decision {
  bool accept = false;
  // Replaces the meaning of a subsentence_pattern candidate.
  std::optional<std::string> meaning;
};

// Records a review decision on a pending candidate and, for accepts, writes
// the rule into the stores. A failed accept leaves the stores untouched and
// the candidate pending with an error note; the note is also returned.
// Throws kValidation if the candidate is not pending, kFormat on a bad
// meaning string.
std::optional<std::string> ApplyDecision(KnowledgeBase &kb, GrammarBase &gb,
                                         CandidateRule &candidate,
                                         const Decision &decision);

// Writes an accepted candidate that has not been applied yet. On failure the
// candidate reverts to pending with an error note.
std::optional<std::string> ApplyAccepted(KnowledgeBase &kb, GrammarBase &gb,
                                         CandidateRule &candidate);

}  // namespace kbparse

#endif  // KBPARSE_LEARNER_H_
