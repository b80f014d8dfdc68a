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

// The grammar base: phrase patterns (ordered feature lists that merge
// adjacent elements into a phrase), subsentence patterns (keyed by the
// "|"-joined pos string of a fully chunked subsentence) and concept
// formation rules (affix rules that give unknown words a provisional
// concept).

#ifndef KBPARSE_GRAMMAR_H_
#define KBPARSE_GRAMMAR_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kbparse/knowledge_base.h"

namespace kbparse {

enum class FeatureKind { kWord, kConcept, kPos };

struct Feature {
  FeatureKind kind = FeatureKind::kWord;
  std::string value;  // word surface or pos tag
  ObjectId concept_id;   // set for kConcept only

  static Feature Word(std::string surface);
  static Feature Concept(ObjectId id);
  static Feature Pos(std::string tag);

  // "word:basketball", "concept:332", "pos:NN". Values are escaped.
  std::string ToString() const;
  // Inverse of ToString. Throws kFormat.
  static Feature Parse(std::string_view token);

  bool operator==(const Feature &) const = default;
};

// "word:a|pos:NN|..." for a whole feature list.
std::string FeaturesToString(const std::vector<Feature> &features);
std::vector<Feature> ParseFeatures(std::string_view text);

enum class PatternStatus { kAccepted, kCandidate };
std::string_view PatternStatusName(PatternStatus status);

struct PhrasePattern {
  uint64_t id = 0;  // 0 means "assign on insert"
  std::vector<Feature> features;
  std::optional<size_t> core_word_index;
  std::string pos_tag;
  std::string meaning;  // stored, not interpreted
  PatternStatus status = PatternStatus::kAccepted;

  bool operator==(const PhrasePattern &) const = default;
};

enum class RelationType { kNsubj, kDobj };
std::string_view RelationTypeName(RelationType type);

struct RelationSpec {
  RelationType type = RelationType::kNsubj;
  size_t head_index = 0;
  size_t tail_index = 0;

  bool operator==(const RelationSpec &) const = default;
};

// "nsubj:0:1,dobj:1:2" <-> specs. Parsing throws kFormat naming the item.
std::vector<RelationSpec> ParseMeaningString(std::string_view text);
std::string SerializeMeaning(const std::vector<RelationSpec> &specs);

enum class SubsentenceType { kSentence, kHalfSentence, kPhrase };
enum class SpeechAct { kDeclarative, kInterrogative, kImperative, kExclamatory };

std::string_view SubsentenceTypeName(SubsentenceType type);
bool ParseSubsentenceType(std::string_view name, SubsentenceType *type);
std::string_view SpeechActName(SpeechAct act);  // "d", "q", "i", "e"
bool ParseSpeechAct(std::string_view name, SpeechAct *act);

struct SubsentencePattern {
  std::string parse_str;
  SubsentenceType ss_type = SubsentenceType::kSentence;
  SpeechAct ss_type2 = SpeechAct::kDeclarative;
  std::vector<RelationSpec> meaning;
  PatternStatus status = PatternStatus::kAccepted;

  bool operator==(const SubsentencePattern &) const = default;
};

// Number of "|"-separated components in a parse string.
size_t ParseStrArity(std::string_view parse_str);

enum class AffixPosition { kPrefix, kSuffix };
enum class AffixUnit { kChar, kToken };

std::string_view AffixPositionName(AffixPosition position);
std::string_view AffixUnitName(AffixUnit unit);
bool ParseAffixPosition(std::string_view name, AffixPosition *position);
bool ParseAffixUnit(std::string_view name, AffixUnit *unit);

// A word whose first/last |count| units equal |affix| is provisionally a
// member of |concept_id|.
struct ConceptRule {
  ObjectId concept_id;
  AffixPosition position = AffixPosition::kSuffix;
  AffixUnit unit = AffixUnit::kToken;
  int count = 1;
  std::string affix;
  std::string pos = "NN";

  bool operator==(const ConceptRule &) const = default;
};

class GrammarBase {
 public:
  // Loads phrase_patterns.tsv, subsentence_patterns.tsv and, when present,
  // concept_rules.tsv. Concept ids are checked against |kb|. Phrase patterns
  // are held in ascending id order, which is also the order in which the
  // parser tries them.
  static GrammarBase Load(const std::filesystem::path &dir,
                          const KnowledgeBase &kb);
  void Save(const std::filesystem::path &dir) const;

  const std::vector<PhrasePattern> &phrase_patterns() const {
    return phrase_patterns_;
  }
  const std::map<std::string, SubsentencePattern> &subsentence_patterns()
      const {
    return subsentence_patterns_;
  }
  const std::vector<ConceptRule> &concept_rules() const {
    return concept_rules_;
  }

  const PhrasePattern *FindPhrasePattern(uint64_t id) const;
  // Accepted patterns only.
  const SubsentencePattern *FindSubsentencePattern(
      std::string_view parse_str) const;

  // Validates and appends; returns the pattern id (assigned max+1 when 0).
  uint64_t AddPhrasePattern(const KnowledgeBase &kb, PhrasePattern pattern);
  // Validates and inserts. A candidate entry with the same parse_str is
  // replaced when |pattern| is accepted.
  void AddSubsentencePattern(SubsentencePattern pattern);
  void AddConceptRule(const KnowledgeBase &kb, ConceptRule rule);

  bool operator==(const GrammarBase &) const = default;

 private:
  void ValidatePhrasePattern(const KnowledgeBase &kb,
                             const PhrasePattern &pattern) const;
  static void ValidateSubsentencePattern(const SubsentencePattern &pattern);

  std::vector<PhrasePattern> phrase_patterns_;
  std::map<std::string, SubsentencePattern> subsentence_patterns_;
  std::vector<ConceptRule> concept_rules_;
};

}  // namespace kbparse

#endif  // KBPARSE_GRAMMAR_H_
