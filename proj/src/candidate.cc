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

#include "kbparse/candidate.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <utility>

#include "kbparse/error.h"
#include "kbparse/text.h"

namespace kbparse {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::array<std::string_view, kCandidateKindCount> kKindNames = {
    "concept_rule", "new_concept", "concept_feature", "phrase_pattern",
    "subsentence_pattern"};

ordered_json PayloadToJson(const ConceptRulePayload &p) {
  ordered_json j;
  j["position"] = AffixPositionName(p.position);
  j["unit"] = AffixUnitName(p.unit);
  j["char_count"] = p.char_count;
  j["chars"] = p.chars;
  j["concept_id"] = p.concept_id.value;
  j["coverage_ratio"] = p.coverage_ratio;
  j["precision_ratio"] = p.precision_ratio;
  return j;
}

ordered_json PayloadToJson(const NewConceptPayload &p) {
  ordered_json j;
  j["surface"] = p.surface;
  j["words"] = p.words;
  j["cohesion"] = p.cohesion;
  return j;
}

ordered_json PayloadToJson(const ConceptFeaturePayload &p) {
  ordered_json j;
  j["anchor"] = p.anchor;
  j["anchor_pos"] = p.anchor_pos;
  j["side"] = SideName(p.side);
  j["members"] = ordered_json::array();
  for (const TaggedToken &m : p.members) {
    j["members"].push_back(ordered_json{{"w", m.w}, {"pos", m.pos}});
  }
  j["concept_name"] = p.concept_name;
  return j;
}

ordered_json PayloadToJson(const PhrasePatternPayload &p) {
  ordered_json j;
  j["features"] = FeaturesToString(p.pattern.features);
  if (p.pattern.core_word_index) {
    j["core_word_index"] = *p.pattern.core_word_index;
  } else {
    j["core_word_index"] = nullptr;
  }
  j["pos_tag"] = p.pattern.pos_tag;
  j["meaning"] = p.pattern.meaning;
  j["method"] = p.method;
  return j;
}

ordered_json PayloadToJson(const SubsentencePatternPayload &p) {
  ordered_json j;
  j["parse_str"] = p.pattern.parse_str;
  j["ss_type"] = SubsentenceTypeName(p.pattern.ss_type);
  j["ss_type2"] = SpeechActName(p.pattern.ss_type2);
  j["meaning"] = SerializeMeaning(p.pattern.meaning);
  j["related"] = p.related;
  return j;
}

template <typename T>
T Get(const json &j, const char *key) {
  if (!j.contains(key)) {
    throw Error(ErrorCode::kFormat, std::string("missing field \"") + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception &) {
    throw Error(ErrorCode::kFormat, std::string("ill-typed field \"") + key + "\"");
  }
}

template <typename Enum>
Enum GetEnum(const json &j, const char *key,
             bool (*parse)(std::string_view, Enum *)) {
  std::string name = Get<std::string>(j, key);
  Enum value{};
  if (!parse(name, &value)) {
    throw Error(ErrorCode::kFormat,
                std::string("bad ") + key + " '" + name + "'");
  }
  return value;
}

bool ParseSide(std::string_view name, Side *side) {
  if (name == "before") {
    *side = Side::kBefore;
  } else if (name == "after") {
    *side = Side::kAfter;
  } else {
    return false;
  }
  return true;
}

CandidatePayload PayloadFromJson(CandidateKind kind, const json &j) {
  if (!j.is_object()) throw Error(ErrorCode::kFormat, "payload must be an object");
  switch (kind) {
    case CandidateKind::kConceptRule: {
      ConceptRulePayload p;
      p.position = GetEnum(j, "position", ParseAffixPosition);
      p.unit = GetEnum(j, "unit", ParseAffixUnit);
      p.char_count = Get<int>(j, "char_count");
      p.chars = Get<std::string>(j, "chars");
      p.concept_id = ObjectId{Get<uint64_t>(j, "concept_id")};
      p.coverage_ratio = Get<double>(j, "coverage_ratio");
      p.precision_ratio = Get<double>(j, "precision_ratio");
      return p;
    }
    case CandidateKind::kNewConcept: {
      NewConceptPayload p;
      p.surface = Get<std::string>(j, "surface");
      p.words = Get<std::vector<std::string>>(j, "words");
      p.cohesion = Get<double>(j, "cohesion");
      return p;
    }
    case CandidateKind::kConceptFeature: {
      ConceptFeaturePayload p;
      p.anchor = Get<std::string>(j, "anchor");
      p.anchor_pos = Get<std::string>(j, "anchor_pos");
      p.side = GetEnum(j, "side", ParseSide);
      for (const json &m : Get<json>(j, "members")) {
        p.members.push_back({Get<std::string>(m, "w"), Get<std::string>(m, "pos")});
      }
      p.concept_name = Get<std::string>(j, "concept_name");
      return p;
    }
    case CandidateKind::kPhrasePattern: {
      PhrasePatternPayload p;
      p.pattern.features = ParseFeatures(Get<std::string>(j, "features"));
      if (j.contains("core_word_index") && !j["core_word_index"].is_null()) {
        p.pattern.core_word_index = Get<size_t>(j, "core_word_index");
      }
      p.pattern.pos_tag = Get<std::string>(j, "pos_tag");
      p.pattern.meaning = Get<std::string>(j, "meaning");
      p.pattern.status = PatternStatus::kCandidate;
      p.method = Get<std::string>(j, "method");
      return p;
    }
    case CandidateKind::kSubsentencePattern: {
      SubsentencePatternPayload p;
      p.pattern.parse_str = Get<std::string>(j, "parse_str");
      p.pattern.ss_type = GetEnum(j, "ss_type", ParseSubsentenceType);
      p.pattern.ss_type2 = GetEnum(j, "ss_type2", ParseSpeechAct);
      p.pattern.meaning = ParseMeaningString(Get<std::string>(j, "meaning"));
      p.pattern.status = PatternStatus::kCandidate;
      p.related = Get<std::vector<uint64_t>>(j, "related");
      return p;
    }
  }
  throw Error(ErrorCode::kFormat, "unknown candidate kind");
}

std::string MembersKey(const std::vector<TaggedToken> &members) {
  std::string out;
  for (const TaggedToken &m : members) {
    if (!out.empty()) out += ',';
    out += EscapeField(m.w);
  }
  return out;
}

}  // namespace

std::string_view CandidateKindName(CandidateKind kind) {
  return kKindNames[static_cast<size_t>(kind)];
}

bool ParseCandidateKind(std::string_view name, CandidateKind *kind) {
  for (size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) {
      *kind = static_cast<CandidateKind>(i);
      return true;
    }
  }
  return false;
}

std::string_view CandidateStatusName(CandidateStatus status) {
  switch (status) {
    case CandidateStatus::kPending: return "pending";
    case CandidateStatus::kAccepted: return "accepted";
    case CandidateStatus::kRejected: return "rejected";
  }
  return "pending";
}

bool ParseCandidateStatus(std::string_view name, CandidateStatus *status) {
  if (name == "pending") {
    *status = CandidateStatus::kPending;
  } else if (name == "accepted") {
    *status = CandidateStatus::kAccepted;
  } else if (name == "rejected") {
    *status = CandidateStatus::kRejected;
  } else {
    return false;
  }
  return true;
}

std::string_view SideName(Side side) {
  return side == Side::kBefore ? "before" : "after";
}

std::string CandidateRule::Key() const {
  std::string key(CandidateKindName(kind()));
  key += '\t';
  std::visit(
      [&key](const auto &p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ConceptRulePayload>) {
          key += std::to_string(p.concept_id.value) + '\t' +
                 std::string(AffixPositionName(p.position)) + '\t' +
                 std::string(AffixUnitName(p.unit)) + '\t' +
                 std::to_string(p.char_count) + '\t' + EscapeField(p.chars);
        } else if constexpr (std::is_same_v<T, NewConceptPayload>) {
          key += EscapeField(p.surface);
        } else if constexpr (std::is_same_v<T, ConceptFeaturePayload>) {
          key += EscapeField(p.anchor) + '\t' + std::string(SideName(p.side)) +
                 '\t' + MembersKey(p.members);
        } else if constexpr (std::is_same_v<T, PhrasePatternPayload>) {
          key += FeaturesToString(p.pattern.features);
        } else {
          key += p.pattern.parse_str;
        }
      },
      payload);
  return key;
}

bool CandidateRule::operator==(const CandidateRule &other) const {
  return id == other.id && payload == other.payload &&
         support == other.support && confidence == other.confidence &&
         evidence == other.evidence && status == other.status &&
         created_at == other.created_at && error_note == other.error_note &&
         applied == other.applied;
}

ordered_json CandidateToJson(const CandidateRule &c) {
  ordered_json j;
  j["id"] = c.id;
  j["kind"] = CandidateKindName(c.kind());
  j["payload"] = std::visit([](const auto &p) { return PayloadToJson(p); },
                            c.payload);
  j["support"] = c.support;
  if (c.confidence) {
    j["confidence"] = *c.confidence;
  } else {
    j["confidence"] = nullptr;
  }
  j["evidence"] = ordered_json::array();
  for (const Evidence &e : c.evidence) {
    ordered_json ev;
    ev["text"] = e.text;
    if (e.start) ev["start"] = *e.start;
    if (e.end) ev["end"] = *e.end;
    j["evidence"].push_back(std::move(ev));
  }
  j["status"] = CandidateStatusName(c.status);
  j["created_at"] = c.created_at;
  if (c.error_note) j["error_note"] = *c.error_note;
  j["applied"] = c.applied;
  return j;
}

CandidateRule CandidateFromJson(const json &j) {
  if (!j.is_object()) throw Error(ErrorCode::kFormat, "candidate must be an object");
  CandidateRule c;
  c.id = Get<uint64_t>(j, "id");
  CandidateKind kind = GetEnum(j, "kind", ParseCandidateKind);
  c.payload = PayloadFromJson(kind, Get<json>(j, "payload"));
  c.support = Get<uint64_t>(j, "support");
  if (j.contains("confidence") && !j["confidence"].is_null()) {
    c.confidence = Get<double>(j, "confidence");
  }
  for (const json &e : Get<json>(j, "evidence")) {
    Evidence ev;
    ev.text = Get<std::string>(e, "text");
    if (e.contains("start")) ev.start = Get<size_t>(e, "start");
    if (e.contains("end")) ev.end = Get<size_t>(e, "end");
    c.evidence.push_back(std::move(ev));
  }
  c.status = GetEnum(j, "status", ParseCandidateStatus);
  c.created_at = Get<uint64_t>(j, "created_at");
  if (j.contains("error_note") && !j["error_note"].is_null()) {
    c.error_note = Get<std::string>(j, "error_note");
  }
  if (j.contains("applied")) c.applied = Get<bool>(j, "applied");
  return c;
}

CandidateStore CandidateStore::Load(const std::filesystem::path &path) {
  CandidateStore store;
  if (!std::filesystem::exists(path)) return store;
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kStorage, "cannot read " + path.string());
  std::string line;
  size_t line_no = 0;
  std::set<uint64_t> ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      CandidateRule c = CandidateFromJson(json::parse(line));
      if (!ids.insert(c.id).second) {
        throw Error(ErrorCode::kDuplicate,
                    "duplicate candidate id " + std::to_string(c.id));
      }
      store.candidates_.push_back(std::move(c));
    } catch (const json::exception &e) {
      throw Error(ErrorCode::kFormat,
                  Where(path, line_no) + "invalid JSON: " + e.what());
    } catch (const Error &e) {
      throw Error(e.code(), Where(path, line_no) + e.what());
    }
  }
  std::sort(store.candidates_.begin(), store.candidates_.end(),
            [](const CandidateRule &a, const CandidateRule &b) {
              return a.id < b.id;
            });
  return store;
}

void CandidateStore::Save(const std::filesystem::path &path) const {
  std::string out;
  for (const CandidateRule &c : candidates_) {
    out += CandidateToJson(c).dump();
    out += '\n';
  }
  WriteFileAtomic(path, out);
}

CandidateRule *CandidateStore::Find(uint64_t id) {
  auto it = std::lower_bound(
      candidates_.begin(), candidates_.end(), id,
      [](const CandidateRule &c, uint64_t v) { return c.id < v; });
  return it != candidates_.end() && it->id == id ? &*it : nullptr;
}

const CandidateRule *CandidateStore::Find(uint64_t id) const {
  return const_cast<CandidateStore *>(this)->Find(id);
}

uint64_t CandidateStore::next_id() const {
  return candidates_.empty() ? 1 : candidates_.back().id + 1;
}

std::vector<uint64_t> CandidateStore::Merge(std::vector<CandidateRule> discovered,
                                            uint64_t iteration) {
  std::map<std::string, uint64_t> ids_by_key;
  for (const CandidateRule &c : candidates_) ids_by_key.emplace(c.Key(), c.id);

  std::vector<uint64_t> added;
  std::vector<uint64_t> batch_ids(discovered.size());
  std::vector<bool> is_new(discovered.size(), false);
  uint64_t next = next_id();
  for (size_t i = 0; i < discovered.size(); ++i) {
    CandidateRule &c = discovered[i];
    auto [it, inserted] = ids_by_key.emplace(c.Key(), next);
    batch_ids[i] = it->second;
    if (!inserted) continue;
    is_new[i] = true;
    c.id = next++;
    c.created_at = iteration;
    c.status = CandidateStatus::kPending;
    c.applied = false;
    added.push_back(c.id);
  }

  for (size_t i = 0; i < discovered.size(); ++i) {
    auto *sub = std::get_if<SubsentencePatternPayload>(&discovered[i].payload);
    if (sub == nullptr) continue;
    std::set<uint64_t> related;
    for (size_t k = 0; k < discovered.size(); ++k) {
      if (discovered[k].kind() != CandidateKind::kConceptFeature) continue;
      const std::set<size_t> &a = discovered[i].sources;
      const std::set<size_t> &b = discovered[k].sources;
      auto ia = a.begin();
      auto ib = b.begin();
      while (ia != a.end() && ib != b.end()) {
        if (*ia == *ib) {
          related.insert(batch_ids[k]);
          break;
        }
        if (*ia < *ib) ++ia; else ++ib;
      }
    }
    sub->related.assign(related.begin(), related.end());
  }

  for (size_t i = 0; i < discovered.size(); ++i) {
    if (is_new[i]) candidates_.push_back(std::move(discovered[i]));
  }
  return added;
}

}  // namespace kbparse
