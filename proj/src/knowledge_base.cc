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

#include "kbparse/knowledge_base.h"

#include <algorithm>
#include <deque>
#include <filesystem>
#include <unordered_set>

#include "kbparse/error.h"
#include "kbparse/pos_tags.h"
#include "kbparse/text.h"

namespace kbparse {
namespace {

namespace fs = std::filesystem;

const std::vector<std::string_view> kConceptHeader = {
    "id", "name", "properties", "methods", "method_exclusions"};
const std::vector<std::string_view> kMethodHeader = {"id", "name", "objects",
                                                     "code"};
const std::vector<std::string_view> kWordHeader = {"surface", "object_id",
                                                   "object_kind", "pos"};
const std::vector<std::string_view> kRelationHeader = {"head_id", "tail_id",
                                                       "rel_type"};

const std::vector<ObjectId> kNoIds;

bool LinkLess(const WordLink &a, const WordLink &b) {
  return std::tie(a.object_kind, a.object_id, a.pos) <
         std::tie(b.object_kind, b.object_id, b.pos);
}

std::string IdString(ObjectId id) { return std::to_string(id.value); }

std::string JoinIds(const std::set<ObjectId> &ids) {
  std::string out;
  for (ObjectId id : ids) {
    if (!out.empty()) out += ',';
    out += IdString(id);
  }
  return out;
}

ObjectId ParseIdField(const fs::path &path, const TsvRow &row, size_t column) {
  uint64_t value;
  if (!ParseUint(row.fields[column], &value)) {
    throw Error(ErrorCode::kFormat, Where(path, row.line) + "bad id '" +
                                        row.fields[column] + "'");
  }
  return ObjectId{value};
}

std::set<ObjectId> ParseIdSetField(const fs::path &path, const TsvRow &row,
                                   size_t column) {
  std::vector<uint64_t> values;
  if (!ParseIdList(row.fields[column], &values)) {
    throw Error(ErrorCode::kFormat, Where(path, row.line) + "bad id list '" +
                                        row.fields[column] + "'");
  }
  std::set<ObjectId> ids;
  for (uint64_t v : values) ids.insert(ObjectId{v});
  return ids;
}

std::string UnescapeAt(const fs::path &path, const TsvRow &row,
                       size_t column) {
  try {
    return UnescapeField(row.fields[column]);
  } catch (const Error &e) {
    throw Error(ErrorCode::kFormat, Where(path, row.line) + e.what());
  }
}

// Re-throws an error from a validation helper with the row location.
template <typename Fn>
void AtRow(const fs::path &path, size_t line, Fn &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    throw Error(e.code(), Where(path, line) + e.what());
  }
}

}  // namespace

std::string_view ObjectKindName(ObjectKind kind) {
  return kind == ObjectKind::kConcept ? "concept" : "method";
}

bool ParseObjectKind(std::string_view name, ObjectKind *kind) {
  if (name == "concept") {
    *kind = ObjectKind::kConcept;
    return true;
  }
  if (name == "method") {
    *kind = ObjectKind::kMethod;
    return true;
  }
  return false;
}

KnowledgeBase KnowledgeBase::Load(const fs::path &dir) {
  const fs::path concepts_path = dir / "concepts.tsv";
  const fs::path methods_path = dir / "methods.tsv";
  const fs::path words_path = dir / "words.tsv";
  const fs::path relations_path = dir / "relations.tsv";

  // All tables are read before any row is validated.
  auto concept_rows = ReadTsv(concepts_path, kConceptHeader);
  auto method_rows = ReadTsv(methods_path, kMethodHeader);
  auto word_rows = ReadTsv(words_path, kWordHeader);
  auto relation_rows = ReadTsv(relations_path, kRelationHeader);

  KnowledgeBase kb;
  std::vector<size_t> concept_lines;
  for (const TsvRow &row : concept_rows) {
    Concept c;
    c.id = ParseIdField(concepts_path, row, 0);
    c.name = UnescapeAt(concepts_path, row, 1);
    c.properties = ParseIdSetField(concepts_path, row, 2);
    c.methods = ParseIdSetField(concepts_path, row, 3);
    c.method_exclusions = ParseIdSetField(concepts_path, row, 4);
    if (!kb.concepts_.emplace(c.id, c).second) {
      throw Error(ErrorCode::kDuplicate, Where(concepts_path, row.line) +
                                             "duplicate concept id " +
                                             IdString(c.id));
    }
  }
  std::map<ObjectId, size_t> method_line;
  for (const TsvRow &row : method_rows) {
    Method m;
    m.id = ParseIdField(methods_path, row, 0);
    m.name = UnescapeAt(methods_path, row, 1);
    m.objects = ParseIdSetField(methods_path, row, 2);
    m.code = UnescapeAt(methods_path, row, 3);
    if (!kb.methods_.emplace(m.id, m).second) {
      throw Error(ErrorCode::kDuplicate, Where(methods_path, row.line) +
                                             "duplicate method id " +
                                             IdString(m.id));
    }
    method_line[m.id] = row.line;
  }

  for (const TsvRow &row : concept_rows) {
    ObjectId id = ParseIdField(concepts_path, row, 0);
    AtRow(concepts_path, row.line,
          [&] { kb.CheckConceptRefs(kb.concepts_.at(id)); });
  }
  for (const auto &[id, method] : kb.methods_) {
    AtRow(methods_path, method_line[id], [&] { kb.CheckMethodRefs(method); });
  }

  for (const TsvRow &row : word_rows) {
    WordLink link;
    link.surface = UnescapeAt(words_path, row, 0);
    link.object_id = ParseIdField(words_path, row, 1);
    if (!ParseObjectKind(row.fields[2], &link.object_kind)) {
      throw Error(ErrorCode::kFormat, Where(words_path, row.line) +
                                          "bad object_kind '" + row.fields[2] +
                                          "'");
    }
    link.pos = row.fields[3];
    AtRow(words_path, row.line, [&] {
      kb.CheckLink(link);
      kb.InsertLink(std::move(link));
    });
  }

  std::set<std::pair<ObjectId, ObjectId>> seen_relations;
  for (const TsvRow &row : relation_rows) {
    Relation rel;
    rel.head = ParseIdField(relations_path, row, 0);
    rel.tail = ParseIdField(relations_path, row, 1);
    rel.rel_type = row.fields[2];
    AtRow(relations_path, row.line, [&] {
      if (rel.rel_type != kBelongsTo) {
        throw Error(ErrorCode::kValidation,
                    "unsupported rel_type '" + rel.rel_type + "'");
      }
      kb.RequireConcept(rel.head);
      kb.RequireConcept(rel.tail);
      if (!seen_relations.insert({rel.head, rel.tail}).second) {
        throw Error(ErrorCode::kDuplicate,
                    "duplicate relation " + IdString(rel.head) + " -> " +
                        IdString(rel.tail));
      }
    });
    kb.relations_.push_back(std::move(rel));
  }
  std::sort(kb.relations_.begin(), kb.relations_.end(),
            [](const Relation &a, const Relation &b) {
              return std::tie(a.head, a.tail) < std::tie(b.head, b.tail);
            });
  kb.RebuildClosure();
  return kb;
}

void KnowledgeBase::Save(const fs::path &dir) const {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kStorage,
                "cannot create " + dir.string() + ": " + ec.message());
  }

  std::string out = "id\tname\tproperties\tmethods\tmethod_exclusions\n";
  for (const auto &[id, c] : concepts_) {
    out += IdString(id) + '\t' + EscapeField(c.name) + '\t' +
           JoinIds(c.properties) + '\t' + JoinIds(c.methods) + '\t' +
           JoinIds(c.method_exclusions) + '\n';
  }
  WriteFileAtomic(dir / "concepts.tsv", out);

  out = "id\tname\tobjects\tcode\n";
  for (const auto &[id, m] : methods_) {
    out += IdString(id) + '\t' + EscapeField(m.name) + '\t' +
           JoinIds(m.objects) + '\t' + EscapeField(m.code) + '\n';
  }
  WriteFileAtomic(dir / "methods.tsv", out);

  out = "surface\tobject_id\tobject_kind\tpos\n";
  for (const auto &[surface, links] : words_) {
    std::vector<const WordLink *> sorted;
    for (const WordLink &link : links) sorted.push_back(&link);
    std::sort(sorted.begin(), sorted.end(),
              [](const WordLink *a, const WordLink *b) {
                return std::tie(a->object_id, a->object_kind, a->pos) <
                       std::tie(b->object_id, b->object_kind, b->pos);
              });
    for (const WordLink *link : sorted) {
      out += EscapeField(surface) + '\t' + IdString(link->object_id) + '\t' +
             std::string(ObjectKindName(link->object_kind)) + '\t' +
             link->pos + '\n';
    }
  }
  WriteFileAtomic(dir / "words.tsv", out);

  out = "head_id\ttail_id\trel_type\n";
  for (const Relation &rel : relations_) {
    out += IdString(rel.head) + '\t' + IdString(rel.tail) + '\t' +
           rel.rel_type + '\n';
  }
  WriteFileAtomic(dir / "relations.tsv", out);
}

const Concept *KnowledgeBase::FindConcept(ObjectId id) const {
  auto it = concepts_.find(id);
  return it == concepts_.end() ? nullptr : &it->second;
}

const Method *KnowledgeBase::FindMethod(ObjectId id) const {
  auto it = methods_.find(id);
  return it == methods_.end() ? nullptr : &it->second;
}

std::vector<WordLink> KnowledgeBase::LookupWord(
    std::string_view surface) const {
  auto it = words_.find(surface);
  if (it == words_.end()) return {};
  return it->second;
}

bool KnowledgeBase::HasSurface(std::string_view surface) const {
  return words_.find(surface) != words_.end();
}

const std::vector<ObjectId> &KnowledgeBase::Parents(ObjectId concept_id) const {
  auto it = parents_.find(concept_id);
  return it == parents_.end() ? kNoIds : it->second;
}

const std::vector<ObjectId> &KnowledgeBase::Children(ObjectId concept_id) const {
  auto it = children_.find(concept_id);
  return it == children_.end() ? kNoIds : it->second;
}

void KnowledgeBase::RequireConcept(ObjectId id) const {
  if (concepts_.find(id) == concepts_.end()) {
    throw Error(ErrorCode::kIntegrity, "unknown concept id " + IdString(id));
  }
}

bool KnowledgeBase::IsDescendant(ObjectId child, ObjectId ancestor) const {
  RequireConcept(child);
  RequireConcept(ancestor);
  const std::vector<ObjectId> &closure = ancestors_.at(child.value);
  return std::binary_search(closure.begin(), closure.end(), ancestor);
}

std::set<ObjectId> KnowledgeBase::ConceptMethods(ObjectId concept_id) const {
  RequireConcept(concept_id);
  const Concept &self = concepts_.at(concept_id);

  std::set<ObjectId> offered;
  for (ObjectId ancestor : ancestors_.at(concept_id.value)) {
    const Concept &a = concepts_.at(ancestor);
    offered.insert(a.methods.begin(), a.methods.end());
  }

  std::set<ObjectId> result;
  for (ObjectId method : offered) {
    if (self.method_exclusions.count(method)) continue;
    // Search upward, refusing to pass through concepts that exclude the
    // method, until some concept declaring it is reached.
    std::unordered_set<uint64_t> visited{concept_id.value};
    std::deque<ObjectId> queue{concept_id};
    bool found = false;
    while (!queue.empty() && !found) {
      ObjectId current = queue.front();
      queue.pop_front();
      const Concept &c = concepts_.at(current);
      if (c.methods.count(method)) {
        found = true;
        break;
      }
      for (ObjectId parent : Parents(current)) {
        if (!visited.insert(parent.value).second) continue;
        if (concepts_.at(parent).method_exclusions.count(method)) continue;
        queue.push_back(parent);
      }
    }
    if (found) result.insert(method);
  }
  return result;
}

bool KnowledgeBase::MethodApplicable(ObjectId method,
                                     ObjectId object_concept) const {
  const Method *m = FindMethod(method);
  if (m == nullptr) {
    throw Error(ErrorCode::kIntegrity, "unknown method id " + IdString(method));
  }
  RequireConcept(object_concept);
  if (m->objects.empty()) return true;
  for (ObjectId target : m->objects) {
    if (IsDescendant(object_concept, target)) return true;
  }
  return false;
}

std::vector<std::pair<ObjectId, int>> KnowledgeBase::AncestorsWithin(
    ObjectId concept_id, int max_depth) const {
  RequireConcept(concept_id);
  std::vector<std::pair<ObjectId, int>> result;
  std::unordered_set<uint64_t> visited{concept_id.value};
  std::vector<ObjectId> frontier{concept_id};
  for (int depth = 1; depth <= max_depth && !frontier.empty(); ++depth) {
    std::vector<ObjectId> next;
    for (ObjectId id : frontier) {
      for (ObjectId parent : Parents(id)) {
        if (visited.insert(parent.value).second) next.push_back(parent);
      }
    }
    std::sort(next.begin(), next.end());
    for (ObjectId id : next) result.emplace_back(id, depth);
    frontier = std::move(next);
  }
  return result;
}

std::vector<std::vector<ObjectId>> KnowledgeBase::FindCycles() const {
  std::vector<std::vector<ObjectId>> components;
  std::set<ObjectId> assigned;
  for (const auto &[id, unused] : concepts_) {
    if (assigned.count(id)) continue;
    // A concept lies on a cycle iff it is a proper ancestor of itself, which
    // happens iff one of its parents has it in its closure.
    bool cyclic = false;
    for (ObjectId parent : Parents(id)) {
      const auto &closure = ancestors_.at(parent.value);
      if (std::binary_search(closure.begin(), closure.end(), id)) {
        cyclic = true;
        break;
      }
    }
    if (!cyclic) continue;
    std::vector<ObjectId> component;
    for (ObjectId other : ancestors_.at(id.value)) {
      const auto &back = ancestors_.at(other.value);
      if (std::binary_search(back.begin(), back.end(), id)) {
        component.push_back(other);
        assigned.insert(other);
      }
    }
    components.push_back(std::move(component));
  }
  return components;
}

void KnowledgeBase::CheckConceptRefs(const Concept &c) const {
  for (ObjectId p : c.properties) RequireConcept(p);
  for (const auto *ids : {&c.methods, &c.method_exclusions}) {
    for (ObjectId m : *ids) {
      if (FindMethod(m) == nullptr) {
        throw Error(ErrorCode::kIntegrity, "unknown method id " + IdString(m));
      }
    }
  }
  for (ObjectId m : c.methods) {
    if (c.method_exclusions.count(m)) {
      throw Error(ErrorCode::kIntegrity,
                  "method " + IdString(m) +
                      " is both declared and excluded by concept " +
                      IdString(c.id));
    }
  }
}

void KnowledgeBase::CheckMethodRefs(const Method &m) const {
  for (ObjectId c : m.objects) RequireConcept(c);
}

void KnowledgeBase::CheckLink(const WordLink &link) const {
  if (link.surface.empty()) {
    throw Error(ErrorCode::kValidation, "empty surface");
  }
  if (!IsValidTag(link.pos)) {
    throw Error(ErrorCode::kValidation, "unknown pos tag '" + link.pos + "'");
  }
  if (link.object_kind == ObjectKind::kConcept) {
    RequireConcept(link.object_id);
  } else if (FindMethod(link.object_id) == nullptr) {
    throw Error(ErrorCode::kIntegrity,
                "unknown method id " + IdString(link.object_id));
  }
  auto it = words_.find(link.surface);
  if (it != words_.end()) {
    for (const WordLink &existing : it->second) {
      if (existing.object_id == link.object_id &&
          existing.object_kind == link.object_kind &&
          existing.pos == link.pos) {
        throw Error(ErrorCode::kDuplicate, "duplicate word link '" +
                                               link.surface + "' -> " +
                                               IdString(link.object_id));
      }
    }
  }
}

void KnowledgeBase::InsertLink(WordLink link) {
  auto &links = words_[link.surface];
  auto pos = std::upper_bound(links.begin(), links.end(), link, LinkLess);
  links.insert(pos, std::move(link));
  ++word_count_;
}

void KnowledgeBase::RebuildClosure() {
  parents_.clear();
  children_.clear();
  for (const Relation &rel : relations_) {
    parents_[rel.head].push_back(rel.tail);
    children_[rel.tail].push_back(rel.head);
  }
  for (auto &[id, ids] : parents_) std::sort(ids.begin(), ids.end());
  for (auto &[id, ids] : children_) std::sort(ids.begin(), ids.end());

  ancestors_.clear();
  ancestors_.reserve(concepts_.size());
  for (const auto &[id, unused] : concepts_) {
    std::vector<ObjectId> closure{id};
    std::unordered_set<uint64_t> visited{id.value};
    for (size_t i = 0; i < closure.size(); ++i) {
      for (ObjectId parent : Parents(closure[i])) {
        if (visited.insert(parent.value).second) closure.push_back(parent);
      }
    }
    std::sort(closure.begin(), closure.end());
    ancestors_.emplace(id.value, std::move(closure));
  }
}

ObjectId KnowledgeBase::AddConcept(Concept record) {
  if (record.id.value == 0) {
    record.id = ObjectId{concepts_.empty() ? 1 : concepts_.rbegin()->first.value + 1};
  } else if (concepts_.count(record.id)) {
    throw Error(ErrorCode::kDuplicate,
                "duplicate concept id " + IdString(record.id));
  }
  CheckConceptRefs(record);
  ObjectId id = record.id;
  concepts_.emplace(id, std::move(record));
  ancestors_.emplace(id.value, std::vector<ObjectId>{id});
  return id;
}

ObjectId KnowledgeBase::AddMethod(Method method) {
  if (method.id.value == 0) {
    method.id = ObjectId{methods_.empty() ? 1 : methods_.rbegin()->first.value + 1};
  } else if (methods_.count(method.id)) {
    throw Error(ErrorCode::kDuplicate,
                "duplicate method id " + IdString(method.id));
  }
  CheckMethodRefs(method);
  ObjectId id = method.id;
  methods_.emplace(id, std::move(method));
  return id;
}

void KnowledgeBase::AddRelation(ObjectId head, ObjectId tail,
                                std::string_view rel_type) {
  if (rel_type != kBelongsTo) {
    throw Error(ErrorCode::kValidation,
                "unsupported rel_type '" + std::string(rel_type) + "'");
  }
  RequireConcept(head);
  RequireConcept(tail);
  Relation rel{head, tail, std::string(rel_type)};
  auto pos = std::lower_bound(relations_.begin(), relations_.end(), rel,
                              [](const Relation &a, const Relation &b) {
                                return std::tie(a.head, a.tail) <
                                       std::tie(b.head, b.tail);
                              });
  if (pos != relations_.end() && pos->head == head && pos->tail == tail) {
    throw Error(ErrorCode::kDuplicate, "duplicate relation " + IdString(head) +
                                           " -> " + IdString(tail));
  }
  relations_.insert(pos, std::move(rel));
  RebuildClosure();
}

void KnowledgeBase::LinkWord(WordLink link) {
  CheckLink(link);
  InsertLink(std::move(link));
}

bool KnowledgeBase::operator==(const KnowledgeBase &other) const {
  return concepts_ == other.concepts_ && methods_ == other.methods_ &&
         words_ == other.words_ && relations_ == other.relations_;
}

}  // namespace kbparse
