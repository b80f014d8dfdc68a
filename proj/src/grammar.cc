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

#include "kbparse/grammar.h"

#include <algorithm>
#include <set>

#include "kbparse/error.h"
#include "kbparse/pos_tags.h"
#include "kbparse/text.h"

namespace kbparse {
namespace {

namespace fs = std::filesystem;

const std::vector<std::string_view> kPhraseHeader = {
    "id", "features", "core_word_index", "pos_tag", "meaning", "status"};
const std::vector<std::string_view> kSubsentenceHeader = {
    "parse_str", "ss_type", "ss_type2", "meaning", "status"};
const std::vector<std::string_view> kConceptRuleHeader = {
    "concept_id", "position", "unit", "count", "affix", "pos"};

bool ParseStatus(std::string_view name, PatternStatus *status) {
  if (name == "accepted") {
    *status = PatternStatus::kAccepted;
    return true;
  }
  if (name == "candidate") {
    *status = PatternStatus::kCandidate;
    return true;
  }
  return false;
}

// Runs |fn| and re-throws any Error with a "path:line:" prefix.
template <typename Fn>
auto AtRow(const fs::path &path, size_t line, Fn &&fn) {
  try {
    return fn();
  } catch (const Error &e) {
    throw Error(e.code(), Where(path, line) + e.what());
  }
}

}  // namespace

Feature Feature::Word(std::string surface) {
  return Feature{FeatureKind::kWord, std::move(surface), ObjectId{}};
}

Feature Feature::Concept(ObjectId id) {
  return Feature{FeatureKind::kConcept, "", id};
}

Feature Feature::Pos(std::string tag) {
  return Feature{FeatureKind::kPos, std::move(tag), ObjectId{}};
}

std::string Feature::ToString() const {
  switch (kind) {
    case FeatureKind::kWord: return "word:" + EscapeField(value);
    case FeatureKind::kConcept: return "concept:" + std::to_string(concept_id.value);
    case FeatureKind::kPos: return "pos:" + EscapeField(value);
  }
  return {};
}

Feature Feature::Parse(std::string_view token) {
  size_t colon = token.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::kFormat,
                "malformed feature '" + std::string(token) + "'");
  }
  std::string_view kind = token.substr(0, colon);
  std::string_view value = token.substr(colon + 1);
  if (kind == "word" && !value.empty()) return Word(UnescapeField(value));
  if (kind == "pos" && !value.empty()) return Pos(UnescapeField(value));
  if (kind == "concept") {
    uint64_t id;
    if (ParseUint(value, &id)) return Concept(ObjectId{id});
  }
  throw Error(ErrorCode::kFormat,
              "malformed feature '" + std::string(token) + "'");
}

std::string FeaturesToString(const std::vector<Feature> &features) {
  std::string out;
  for (size_t i = 0; i < features.size(); ++i) {
    if (i > 0) out += '|';
    out += features[i].ToString();
  }
  return out;
}

std::vector<Feature> ParseFeatures(std::string_view text) {
  std::vector<Feature> features;
  if (text.empty()) return features;
  for (const std::string &token : Split(text, '|')) {
    features.push_back(Feature::Parse(token));
  }
  return features;
}

std::string_view PatternStatusName(PatternStatus status) {
  return status == PatternStatus::kAccepted ? "accepted" : "candidate";
}

std::string_view RelationTypeName(RelationType type) {
  return type == RelationType::kNsubj ? "nsubj" : "dobj";
}

std::vector<RelationSpec> ParseMeaningString(std::string_view text) {
  std::vector<RelationSpec> specs;
  if (text.empty()) return specs;
  for (const std::string &item : Split(text, ',')) {
    std::vector<std::string> fields = Split(item, ':');
    if (fields.size() != 3) {
      throw Error(ErrorCode::kFormat,
                  "meaning item '" + item + "' must have 3 fields");
    }
    RelationSpec spec;
    if (fields[0] == "nsubj") {
      spec.type = RelationType::kNsubj;
    } else if (fields[0] == "dobj") {
      spec.type = RelationType::kDobj;
    } else {
      throw Error(ErrorCode::kFormat, "meaning item '" + item +
                                          "' has unsupported type '" +
                                          fields[0] + "'");
    }
    uint64_t head, tail;
    if (!ParseUint(fields[1], &head) || !ParseUint(fields[2], &tail)) {
      throw Error(ErrorCode::kFormat,
                  "meaning item '" + item + "' has a non-integer index");
    }
    if (head == tail) {
      throw Error(ErrorCode::kFormat,
                  "meaning item '" + item + "' relates an element to itself");
    }
    spec.head_index = head;
    spec.tail_index = tail;
    specs.push_back(spec);
  }
  return specs;
}

std::string SerializeMeaning(const std::vector<RelationSpec> &specs) {
  std::string out;
  for (const RelationSpec &spec : specs) {
    if (!out.empty()) out += ',';
    out += std::string(RelationTypeName(spec.type)) + ':' +
           std::to_string(spec.head_index) + ':' +
           std::to_string(spec.tail_index);
  }
  return out;
}

std::string_view SubsentenceTypeName(SubsentenceType type) {
  switch (type) {
    case SubsentenceType::kSentence: return "sentence";
    case SubsentenceType::kHalfSentence: return "half_sentence";
    case SubsentenceType::kPhrase: return "phrase";
  }
  return {};
}

bool ParseSubsentenceType(std::string_view name, SubsentenceType *type) {
  for (auto t : {SubsentenceType::kSentence, SubsentenceType::kHalfSentence,
                 SubsentenceType::kPhrase}) {
    if (SubsentenceTypeName(t) == name) {
      *type = t;
      return true;
    }
  }
  return false;
}

std::string_view SpeechActName(SpeechAct act) {
  switch (act) {
    case SpeechAct::kDeclarative: return "d";
    case SpeechAct::kInterrogative: return "q";
    case SpeechAct::kImperative: return "i";
    case SpeechAct::kExclamatory: return "e";
  }
  return {};
}

bool ParseSpeechAct(std::string_view name, SpeechAct *act) {
  for (auto a : {SpeechAct::kDeclarative, SpeechAct::kInterrogative,
                 SpeechAct::kImperative, SpeechAct::kExclamatory}) {
    if (SpeechActName(a) == name) {
      *act = a;
      return true;
    }
  }
  return false;
}

size_t ParseStrArity(std::string_view parse_str) {
  if (parse_str.empty()) return 0;
  return static_cast<size_t>(std::count(parse_str.begin(), parse_str.end(), '|')) + 1;
}

std::string_view AffixPositionName(AffixPosition position) {
  return position == AffixPosition::kPrefix ? "prefix" : "suffix";
}

std::string_view AffixUnitName(AffixUnit unit) {
  return unit == AffixUnit::kChar ? "char" : "token";
}

bool ParseAffixPosition(std::string_view name, AffixPosition *position) {
  if (name == "prefix") {
    *position = AffixPosition::kPrefix;
  } else if (name == "suffix") {
    *position = AffixPosition::kSuffix;
  } else {
    return false;
  }
  return true;
}

bool ParseAffixUnit(std::string_view name, AffixUnit *unit) {
  if (name == "char") {
    *unit = AffixUnit::kChar;
  } else if (name == "token") {
    *unit = AffixUnit::kToken;
  } else {
    return false;
  }
  return true;
}

GrammarBase GrammarBase::Load(const fs::path &dir, const KnowledgeBase &kb) {
  const fs::path phrase_path = dir / "phrase_patterns.tsv";
  const fs::path subsentence_path = dir / "subsentence_patterns.tsv";
  const fs::path rules_path = dir / "concept_rules.tsv";

  GrammarBase gb;
  std::vector<std::pair<PhrasePattern, size_t>> phrases;
  for (const TsvRow &row : ReadTsv(phrase_path, kPhraseHeader)) {
    PhrasePattern p = AtRow(phrase_path, row.line, [&] {
      PhrasePattern p;
      if (!ParseUint(row.fields[0], &p.id) || p.id == 0) {
        throw Error(ErrorCode::kFormat, "bad pattern id '" + row.fields[0] + "'");
      }
      p.features = ParseFeatures(row.fields[1]);
      if (!row.fields[2].empty()) {
        uint64_t index;
        if (!ParseUint(row.fields[2], &index)) {
          throw Error(ErrorCode::kFormat,
                      "bad core_word_index '" + row.fields[2] + "'");
        }
        p.core_word_index = index;
      }
      p.pos_tag = row.fields[3];
      p.meaning = UnescapeField(row.fields[4]);
      if (!ParseStatus(row.fields[5], &p.status)) {
        throw Error(ErrorCode::kFormat, "bad status '" + row.fields[5] + "'");
      }
      return p;
    });
    phrases.emplace_back(std::move(p), row.line);
  }
  std::stable_sort(phrases.begin(), phrases.end(),
                   [](const auto &a, const auto &b) {
                     return a.first.id < b.first.id;
                   });
  for (auto &[pattern, line] : phrases) {
    AtRow(phrase_path, line, [&] {
      if (gb.FindPhrasePattern(pattern.id) != nullptr) {
        throw Error(ErrorCode::kDuplicate,
                    "duplicate pattern id " + std::to_string(pattern.id));
      }
      gb.AddPhrasePattern(kb, pattern);
    });
  }

  for (const TsvRow &row : ReadTsv(subsentence_path, kSubsentenceHeader)) {
    AtRow(subsentence_path, row.line, [&] {
      SubsentencePattern sp;
      sp.parse_str = row.fields[0];
      if (!ParseSubsentenceType(row.fields[1], &sp.ss_type)) {
        throw Error(ErrorCode::kFormat, "bad ss_type '" + row.fields[1] + "'");
      }
      if (!ParseSpeechAct(row.fields[2], &sp.ss_type2)) {
        throw Error(ErrorCode::kFormat, "bad ss_type2 '" + row.fields[2] + "'");
      }
      sp.meaning = ParseMeaningString(row.fields[3]);
      if (!ParseStatus(row.fields[4], &sp.status)) {
        throw Error(ErrorCode::kFormat, "bad status '" + row.fields[4] + "'");
      }
      if (gb.subsentence_patterns_.count(sp.parse_str)) {
        throw Error(ErrorCode::kDuplicate,
                    "duplicate parse_str '" + sp.parse_str + "'");
      }
      gb.AddSubsentencePattern(std::move(sp));
    });
  }

  if (fs::exists(rules_path)) {
    for (const TsvRow &row : ReadTsv(rules_path, kConceptRuleHeader)) {
      AtRow(rules_path, row.line, [&] {
        ConceptRule rule;
        uint64_t id, count;
        if (!ParseUint(row.fields[0], &id)) {
          throw Error(ErrorCode::kFormat, "bad concept id '" + row.fields[0] + "'");
        }
        rule.concept_id = ObjectId{id};
        if (!ParseAffixPosition(row.fields[1], &rule.position) ||
            !ParseAffixUnit(row.fields[2], &rule.unit) ||
            !ParseUint(row.fields[3], &count)) {
          throw Error(ErrorCode::kFormat, "malformed concept rule");
        }
        rule.count = static_cast<int>(count);
        rule.affix = UnescapeField(row.fields[4]);
        rule.pos = row.fields[5];
        gb.AddConceptRule(kb, std::move(rule));
      });
    }
  }
  return gb;
}

void GrammarBase::Save(const fs::path &dir) const {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kStorage,
                "cannot create " + dir.string() + ": " + ec.message());
  }

  std::string out = "id\tfeatures\tcore_word_index\tpos_tag\tmeaning\tstatus\n";
  for (const PhrasePattern &p : phrase_patterns_) {
    out += std::to_string(p.id) + '\t' + FeaturesToString(p.features) + '\t' +
           (p.core_word_index ? std::to_string(*p.core_word_index) : "") +
           '\t' + p.pos_tag + '\t' + EscapeField(p.meaning) + '\t' +
           std::string(PatternStatusName(p.status)) + '\n';
  }
  WriteFileAtomic(dir / "phrase_patterns.tsv", out);

  out = "parse_str\tss_type\tss_type2\tmeaning\tstatus\n";
  for (const auto &[parse_str, sp] : subsentence_patterns_) {
    out += parse_str + '\t' + std::string(SubsentenceTypeName(sp.ss_type)) +
           '\t' + std::string(SpeechActName(sp.ss_type2)) + '\t' +
           SerializeMeaning(sp.meaning) + '\t' +
           std::string(PatternStatusName(sp.status)) + '\n';
  }
  WriteFileAtomic(dir / "subsentence_patterns.tsv", out);

  out = "concept_id\tposition\tunit\tcount\taffix\tpos\n";
  for (const ConceptRule &rule : concept_rules_) {
    out += std::to_string(rule.concept_id.value) + '\t' +
           std::string(AffixPositionName(rule.position)) + '\t' +
           std::string(AffixUnitName(rule.unit)) + '\t' +
           std::to_string(rule.count) + '\t' + EscapeField(rule.affix) + '\t' +
           rule.pos + '\n';
  }
  WriteFileAtomic(dir / "concept_rules.tsv", out);
}

const PhrasePattern *GrammarBase::FindPhrasePattern(uint64_t id) const {
  for (const PhrasePattern &p : phrase_patterns_) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

const SubsentencePattern *GrammarBase::FindSubsentencePattern(
    std::string_view parse_str) const {
  auto it = subsentence_patterns_.find(std::string(parse_str));
  if (it == subsentence_patterns_.end() ||
      it->second.status != PatternStatus::kAccepted) {
    return nullptr;
  }
  return &it->second;
}

void GrammarBase::ValidatePhrasePattern(const KnowledgeBase &kb,
                                        const PhrasePattern &p) const {
  if (p.features.size() < 2) {
    throw Error(ErrorCode::kValidation,
                "phrase pattern needs at least 2 features");
  }
  if (p.core_word_index && *p.core_word_index >= p.features.size()) {
    throw Error(ErrorCode::kValidation,
                "core_word_index " + std::to_string(*p.core_word_index) +
                    " out of range for " + std::to_string(p.features.size()) +
                    " features");
  }
  if (!IsValidTag(p.pos_tag)) {
    throw Error(ErrorCode::kValidation, "unknown pos tag '" + p.pos_tag + "'");
  }
  for (const Feature &f : p.features) {
    if (f.kind == FeatureKind::kConcept && kb.FindConcept(f.concept_id) == nullptr) {
      throw Error(ErrorCode::kIntegrity,
                  "unknown concept id " + std::to_string(f.concept_id.value));
    }
    if (f.kind == FeatureKind::kPos && !IsValidTag(f.value)) {
      throw Error(ErrorCode::kValidation,
                  "unknown pos tag '" + f.value + "' in feature");
    }
    if (f.kind != FeatureKind::kConcept && f.value.empty()) {
      throw Error(ErrorCode::kValidation, "empty feature value");
    }
  }
  if (p.status == PatternStatus::kAccepted) {
    for (const PhrasePattern &other : phrase_patterns_) {
      if (other.status == PatternStatus::kAccepted &&
          other.features == p.features) {
        throw Error(ErrorCode::kDuplicate,
                    "pattern " + FeaturesToString(p.features) +
                        " duplicates pattern " + std::to_string(other.id));
      }
    }
  }
}

uint64_t GrammarBase::AddPhrasePattern(const KnowledgeBase &kb,
                                       PhrasePattern pattern) {
  ValidatePhrasePattern(kb, pattern);
  uint64_t max_id = 0;
  for (const PhrasePattern &p : phrase_patterns_) max_id = std::max(max_id, p.id);
  if (pattern.id == 0) {
    pattern.id = max_id + 1;
  } else if (FindPhrasePattern(pattern.id) != nullptr) {
    throw Error(ErrorCode::kDuplicate,
                "duplicate pattern id " + std::to_string(pattern.id));
  }
  uint64_t id = pattern.id;
  auto pos = std::upper_bound(
      phrase_patterns_.begin(), phrase_patterns_.end(), id,
      [](uint64_t value, const PhrasePattern &p) { return value < p.id; });
  phrase_patterns_.insert(pos, std::move(pattern));
  return id;
}

void GrammarBase::ValidateSubsentencePattern(const SubsentencePattern &sp) {
  if (sp.parse_str.empty()) {
    throw Error(ErrorCode::kValidation, "empty parse_str");
  }
  for (const std::string &tag : Split(sp.parse_str, '|')) {
    if (!IsValidTag(tag)) {
      throw Error(ErrorCode::kValidation,
                  "unknown pos tag '" + tag + "' in parse_str '" +
                      sp.parse_str + "'");
    }
  }
  size_t arity = ParseStrArity(sp.parse_str);
  for (const RelationSpec &spec : sp.meaning) {
    if (spec.head_index >= arity || spec.tail_index >= arity ||
        spec.head_index == spec.tail_index) {
      throw Error(ErrorCode::kValidation,
                  "relation " + SerializeMeaning({spec}) + " out of range for '" +
                      sp.parse_str + "'");
    }
  }
}

void GrammarBase::AddSubsentencePattern(SubsentencePattern pattern) {
  ValidateSubsentencePattern(pattern);
  auto it = subsentence_patterns_.find(pattern.parse_str);
  if (it != subsentence_patterns_.end()) {
    bool replaces_candidate = it->second.status == PatternStatus::kCandidate &&
                              pattern.status == PatternStatus::kAccepted;
    if (!replaces_candidate) {
      throw Error(ErrorCode::kDuplicate,
                  "duplicate parse_str '" + pattern.parse_str + "'");
    }
    it->second = std::move(pattern);
    return;
  }
  std::string key = pattern.parse_str;
  subsentence_patterns_.emplace(std::move(key), std::move(pattern));
}

void GrammarBase::AddConceptRule(const KnowledgeBase &kb, ConceptRule rule) {
  if (kb.FindConcept(rule.concept_id) == nullptr) {
    throw Error(ErrorCode::kIntegrity,
                "unknown concept id " + std::to_string(rule.concept_id.value));
  }
  if (rule.count < 1 || rule.count > 2 || rule.affix.empty()) {
    throw Error(ErrorCode::kValidation, "concept rule affix must be 1-2 units");
  }
  if (!IsValidTag(rule.pos)) {
    throw Error(ErrorCode::kValidation, "unknown pos tag '" + rule.pos + "'");
  }
  if (std::find(concept_rules_.begin(), concept_rules_.end(), rule) !=
      concept_rules_.end()) {
    throw Error(ErrorCode::kDuplicate, "duplicate concept rule");
  }
  concept_rules_.push_back(std::move(rule));
}

}  // namespace kbparse
