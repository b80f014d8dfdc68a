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

// Candidate rules proposed by the learner and their review state, plus the
// candidates.jsonl store.

#ifndef KBPARSE_CANDIDATE_H_
#define KBPARSE_CANDIDATE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "kbparse/grammar.h"
#include "kbparse/knowledge_base.h"
#include "kbparse/segmenter.h"

namespace kbparse {

enum class CandidateKind {
  kConceptRule,
  kNewConcept,
  kConceptFeature,
  kPhrasePattern,
  kSubsentencePattern,
};
inline constexpr size_t kCandidateKindCount = 5;

std::string_view CandidateKindName(CandidateKind kind);
bool ParseCandidateKind(std::string_view name, CandidateKind *kind);

enum class CandidateStatus { kPending, kAccepted, kRejected };

std::string_view CandidateStatusName(CandidateStatus status);
bool ParseCandidateStatus(std::string_view name, CandidateStatus *status);

struct ConceptRulePayload {
  AffixPosition position = AffixPosition::kSuffix;
  AffixUnit unit = AffixUnit::kToken;
  int char_count = 1;
  std::string chars;
  ObjectId concept_id;
  double coverage_ratio = 0.0;
  double precision_ratio = 0.0;

  bool operator==(const ConceptRulePayload &) const = default;
};

struct NewConceptPayload {
  std::string surface;  // words joined as they appear in text
  std::vector<std::string> words;
  double cohesion = 0.0;

  bool operator==(const NewConceptPayload &) const = default;
};

enum class Side { kBefore, kAfter };
std::string_view SideName(Side side);

struct ConceptFeaturePayload {
  std::string anchor;
  std::string anchor_pos;
  Side side = Side::kBefore;
  std::vector<TaggedToken> members;  // sorted by surface
  std::string concept_name;

  bool operator==(const ConceptFeaturePayload &) const = default;
};

struct PhrasePatternPayload {
  PhrasePattern pattern;
  std::string method;  // "trigram" or "cooccur"

  bool operator==(const PhrasePatternPayload &) const = default;
};

struct SubsentencePatternPayload {
  SubsentencePattern pattern;
  // concept_feature candidates drawn from the same subsentences.
  std::vector<uint64_t> related;

  bool operator==(const SubsentencePatternPayload &) const = default;
};

using CandidatePayload =
    std::variant<ConceptRulePayload, NewConceptPayload, ConceptFeaturePayload,
                 PhrasePatternPayload, SubsentencePatternPayload>;

// One example of a candidate: a subsentence (or lexicon surface) with the
// matched token window [start, end) when there is one.
struct Evidence {
  std::string text;
  std::optional<size_t> start;
  std::optional<size_t> end;

  bool operator==(const Evidence &) const = default;
};

inline constexpr size_t kMaxEvidence = 20;

struct CandidateRule {
  uint64_t id = 0;
  CandidatePayload payload;
  uint64_t support = 0;
  std::optional<double> confidence;
  std::vector<Evidence> evidence;
  CandidateStatus status = CandidateStatus::kPending;
  uint64_t created_at = 0;
  std::optional<std::string> error_note;
  // Set once an accepted candidate has been written into the stores.
  bool applied = false;

  // Indices of the learner input subsentences this candidate came from.
  // Not persisted.
  std::set<size_t> sources;

  CandidateKind kind() const {
    return static_cast<CandidateKind>(payload.index());
  }
  // Identity of the proposed rule, independent of statistics.
  std::string Key() const;

  bool operator==(const CandidateRule &other) const;
};

nlohmann::ordered_json CandidateToJson(const CandidateRule &candidate);
// Throws kFormat.
CandidateRule CandidateFromJson(const nlohmann::json &json);

// candidates.jsonl, one candidate per line in id order.
class CandidateStore {
 public:
  // A missing file yields an empty store. Throws kFormat with line numbers.
  static CandidateStore Load(const std::filesystem::path &path);
  // Atomic: written to a temporary file and renamed into place.
  void Save(const std::filesystem::path &path) const;

  const std::vector<CandidateRule> &candidates() const { return candidates_; }
  std::vector<CandidateRule> &mutable_candidates() { return candidates_; }
  CandidateRule *Find(uint64_t id);
  const CandidateRule *Find(uint64_t id) const;
  uint64_t next_id() const;

  // Appends candidates whose Key() is new to the store, assigning fresh ids
  // and |iteration| as created_at. subsentence_pattern candidates get their
  // related lists filled from concept_feature candidates of the same batch.
  // Returns the ids added.
  std::vector<uint64_t> Merge(std::vector<CandidateRule> discovered,
                              uint64_t iteration);

  bool operator==(const CandidateStore &) const = default;

 private:
  std::vector<CandidateRule> candidates_;
};

}  // namespace kbparse

#endif  // KBPARSE_CANDIDATE_H_
