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

// The object-oriented knowledge base. Concepts play the role of both class
// and instance; the only relation is belongs_to ("head belongs to tail"),
// which forms the concept hierarchy. Methods record which concepts they can
// act on. Word links are the sole bridge between surface strings and object
// ids.
//
// A loaded KnowledgeBase is a value. Const member functions are safe to call
// from any number of threads; mutations need exclusive access.

#ifndef KBPARSE_KNOWLEDGE_BASE_H_
#define KBPARSE_KNOWLEDGE_BASE_H_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace kbparse {

struct ObjectId {
  uint64_t value = 0;

  auto operator<=>(const ObjectId &) const = default;
};

enum class ObjectKind { kConcept, kMethod };

std::string_view ObjectKindName(ObjectKind kind);
bool ParseObjectKind(std::string_view name, ObjectKind *kind);

struct ObjectRef {
  ObjectKind kind = ObjectKind::kConcept;
  ObjectId id;

  auto operator<=>(const ObjectRef &) const = default;
};

struct Concept {
  ObjectId id;
  std::string name;
  std::set<ObjectId> properties;
  std::set<ObjectId> methods;
  // Methods this concept refuses to inherit from its ancestors.
  std::set<ObjectId> method_exclusions;

  bool operator==(const Concept &) const = default;
};

struct Method {
  ObjectId id;
  std::string name;
  // Concepts the method can act on; empty means unconstrained.
  std::set<ObjectId> objects;
  // Stored verbatim, never executed.
  std::string code;

  bool operator==(const Method &) const = default;
};

struct WordLink {
  std::string surface;
  ObjectId object_id;
  ObjectKind object_kind = ObjectKind::kConcept;
  std::string pos;

  bool operator==(const WordLink &) const = default;
};

inline constexpr std::string_view kBelongsTo = "belongs_to";

struct Relation {
  ObjectId head;
  ObjectId tail;
  std::string rel_type{kBelongsTo};

  bool operator==(const Relation &) const = default;
};

class KnowledgeBase {
 public:
  KnowledgeBase() = default;

  // Reads concepts.tsv, methods.tsv, words.tsv and relations.tsv from |dir|.
  // Missing files raise kConfig; malformed rows raise kFormat and dangling
  // references kIntegrity, both prefixed with "path:line:".
  static KnowledgeBase Load(const std::filesystem::path &dir);

  // Writes the four tables in canonical order. Output is byte-deterministic.
  void Save(const std::filesystem::path &dir) const;

  const std::map<ObjectId, Concept> &concepts() const { return concepts_; }
  const std::map<ObjectId, Method> &methods() const { return methods_; }
  const std::vector<Relation> &relations() const { return relations_; }
  size_t word_count() const { return word_count_; }

  // Surface -> links, each list ordered by (kind, id, pos).
  const std::map<std::string, std::vector<WordLink>, std::less<>> &words()
      const {
    return words_;
  }

  const Concept *FindConcept(ObjectId id) const;
  const Method *FindMethod(ObjectId id) const;

  // All links for the exact surface, ordered by (kind, id, pos).
  std::vector<WordLink> LookupWord(std::string_view surface) const;
  bool HasSurface(std::string_view surface) const;

  // Direct belongs_to neighbours, sorted by id.
  const std::vector<ObjectId> &Parents(ObjectId concept_id) const;
  const std::vector<ObjectId> &Children(ObjectId concept_id) const;

  // Reflexive-transitive belongs_to test. Throws kIntegrity on unknown ids.
  bool IsDescendant(ObjectId child, ObjectId ancestor) const;

  // Own methods plus inherited ones. A method is inherited from an ancestor
  // only along a belongs_to path on which no concept, including |concept_id|
  // itself, lists it as an exclusion.
  std::set<ObjectId> ConceptMethods(ObjectId concept_id) const;

  // True iff |object_concept| descends from any of the method's objects, or
  // the method declares no objects.
  bool MethodApplicable(ObjectId method, ObjectId object_concept) const;

  // Proper ancestors reachable within |max_depth| belongs_to steps, with
  // their shortest distance, ordered by (distance, id).
  std::vector<std::pair<ObjectId, int>> AncestorsWithin(ObjectId concept_id,
                                                        int max_depth) const;

  // Strongly connected components of the belongs_to graph that contain a
  // cycle. Each component is sorted; components are ordered by first id.
  std::vector<std::vector<ObjectId>> FindCycles() const;

  // Mutations. Each validates its payload first and either applies
  // completely or throws with the knowledge base unchanged.

  // Allocates max concept id + 1 when |record.id| is zero.
  ObjectId AddConcept(Concept record);
  ObjectId AddMethod(Method method);
  void AddRelation(ObjectId head, ObjectId tail,
                   std::string_view rel_type = kBelongsTo);
  void LinkWord(WordLink link);

  bool operator==(const KnowledgeBase &other) const;

 private:
  void CheckConceptRefs(const Concept &record) const;
  void CheckMethodRefs(const Method &method) const;
  void CheckLink(const WordLink &link) const;
  void InsertLink(WordLink link);
  void RebuildClosure();
  void RequireConcept(ObjectId id) const;

  std::map<ObjectId, Concept> concepts_;
  std::map<ObjectId, Method> methods_;
  std::map<std::string, std::vector<WordLink>, std::less<>> words_;
  size_t word_count_ = 0;
  std::vector<Relation> relations_;  // sorted by (head, tail)

  std::map<ObjectId, std::vector<ObjectId>> parents_;
  std::map<ObjectId, std::vector<ObjectId>> children_;
  // Reflexive-transitive ancestor closure per concept, sorted.
  std::unordered_map<uint64_t, std::vector<ObjectId>> ancestors_;
};

}  // namespace kbparse

#endif  // KBPARSE_KNOWLEDGE_BASE_H_
