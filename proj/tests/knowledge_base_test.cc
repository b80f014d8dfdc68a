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

#include <chrono>
#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "kbparse/error.h"
#include "oracles.h"
#include "test_support.h"

namespace kbparse {
namespace {

using testing::TempDir;

constexpr ObjectId kHuman{2};
constexpr ObjectId kBlindPerson{3};
constexpr ObjectId kObject{4};
constexpr ObjectId kEquipment{5};
constexpr ObjectId kBall{6};
constexpr ObjectId kFootball{12};
constexpr ObjectId kVolleyball{13};
constexpr ObjectId kTable{80};
constexpr ObjectId kSport{332};
constexpr ObjectId kBasketball{400};
constexpr ObjectId kPlay{301};
constexpr ObjectId kLook{302};

ErrorCode CodeOf(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kNotFound;
}

TEST(KnowledgeBaseLoadTest, HeaderOnlyDirectoryIsEmpty) {
  TempDir dir;
  testing::WriteKbTables(dir.path(), "", "", "", "");
  KnowledgeBase kb = KnowledgeBase::Load(dir.path());
  EXPECT_EQ(kb.concepts().size(), 0u);
  EXPECT_EQ(kb.word_count(), 0u);
}

TEST(KnowledgeBaseLoadTest, ToyFixtureCounts) {
  KnowledgeBase kb = testing::ToyKb();
  EXPECT_EQ(kb.concepts().size(), 12u);
  EXPECT_EQ(kb.methods().size(), 3u);
  EXPECT_EQ(kb.word_count(), 20u);
  EXPECT_EQ(kb.relations().size(), 11u);
}

TEST(KnowledgeBaseLoadTest, DanglingWordNamesFileAndLine) {
  TempDir dir;
  testing::WriteKbTables(dir.path(), "1\tentity\t\t\t\n", "",
                         "thing\t1\tconcept\tNN\nghost\t999\tconcept\tNN\n", "");
  try {
    KnowledgeBase::Load(dir.path());
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kIntegrity);
    EXPECT_NE(std::string(e.what()).find("words.tsv:3"), std::string::npos) << e.what();
  }
}

TEST(KnowledgeBaseLoadTest, MissingFileIsConfigError) {
  TempDir dir;
  EXPECT_EQ(CodeOf([&] { KnowledgeBase::Load(dir.path()); }), ErrorCode::kConfig);
}

TEST(KnowledgeBaseLoadTest, MalformedRowIsFormatError) {
  TempDir dir;
  testing::WriteKbTables(dir.path(), "x\tentity\t\t\t\n", "", "", "");
  EXPECT_EQ(CodeOf([&] { KnowledgeBase::Load(dir.path()); }), ErrorCode::kFormat);
}

TEST(KnowledgeBaseLoadTest, UnknownRelationTypeRejected) {
  TempDir dir;
  testing::WriteKbTables(dir.path(), "1\ta\t\t\t\n2\tb\t\t\t\n", "", "",
                         "1\t2\tcauses\n");
  EXPECT_THROW(KnowledgeBase::Load(dir.path()), Error);
}

TEST(KnowledgeBaseSaveTest, RoundTripAndDeterminism) {
  KnowledgeBase kb = testing::ToyKb();
  TempDir a;
  TempDir b;
  kb.Save(a.path());
  kb.Save(b.path());
  EXPECT_EQ(testing::Snapshot(a.path()), testing::Snapshot(b.path()));
  EXPECT_EQ(KnowledgeBase::Load(a.path()), kb);
  // The fixture files are already canonical.
  EXPECT_EQ(testing::Snapshot(a.path()),
            testing::Snapshot(testing::DataDir() / "toy" / "kb"));
}

TEST(KnowledgeBaseSaveTest, EmptyKbWritesHeaders) {
  TempDir dir;
  KnowledgeBase().Save(dir.path());
  auto files = testing::Snapshot(dir.path());
  ASSERT_EQ(files.size(), 4u);
  for (const auto &[name, bytes] : files) {
    EXPECT_EQ(std::count(bytes.begin(), bytes.end(), '\n'), 1) << name;
  }
}

TEST(KnowledgeBaseSaveTest, EscapedFieldsSurvive) {
  KnowledgeBase kb;
  Concept c;
  c.name = "odd:name|with\ttab";
  ObjectId id = kb.AddConcept(c);
  kb.LinkWord({"new york", id, ObjectKind::kConcept, "NN"});
  Method m;
  m.name = "m";
  m.code = "a\nb % c";
  kb.AddMethod(m);
  TempDir dir;
  kb.Save(dir.path());
  EXPECT_EQ(KnowledgeBase::Load(dir.path()), kb);
}

TEST(LookupWordTest, SingleConceptLink) {
  KnowledgeBase kb = testing::ToyKb();
  std::vector<WordLink> links = kb.LookupWord("football");
  ASSERT_EQ(links.size(), 1u);
  EXPECT_EQ(links[0].object_id, kFootball);
  EXPECT_EQ(links[0].object_kind, ObjectKind::kConcept);
  EXPECT_EQ(links[0].pos, "NN");
}

TEST(LookupWordTest, UnknownSurface) {
  EXPECT_TRUE(testing::ToyKb().LookupWord("qwzx").empty());
}

TEST(LookupWordTest, ConceptAndMethodInKindOrder) {
  std::vector<WordLink> links = testing::ToyKb().LookupWord("play");
  ASSERT_EQ(links.size(), 2u);
  EXPECT_EQ(links[0].object_kind, ObjectKind::kConcept);
  EXPECT_EQ(links[0].object_id, ObjectId{77});
  EXPECT_EQ(links[1].object_kind, ObjectKind::kMethod);
  EXPECT_EQ(links[1].object_id, kPlay);
}

TEST(IsDescendantTest, FootballBelongsToSport) {
  KnowledgeBase kb = testing::ToyKb();
  EXPECT_TRUE(kb.IsDescendant(kFootball, kSport));
  EXPECT_TRUE(kb.IsDescendant(kVolleyball, kSport));
  EXPECT_FALSE(kb.IsDescendant(kTable, kSport));
  EXPECT_FALSE(kb.IsDescendant(kSport, kFootball));
}

TEST(IsDescendantTest, Reflexive) {
  KnowledgeBase kb = testing::ToyKb();
  for (const auto &[id, c] : kb.concepts()) EXPECT_TRUE(kb.IsDescendant(id, id));
}

TEST(IsDescendantTest, UnknownIdIsIntegrityError) {
  KnowledgeBase kb = testing::ToyKb();
  EXPECT_EQ(CodeOf([&] { kb.IsDescendant(ObjectId{999}, kSport); }),
            ErrorCode::kIntegrity);
}

TEST(IsDescendantTest, CycleTerminates) {
  TempDir dir;
  testing::WriteKbTables(dir.path(), "1\ta\t\t\t\n2\tb\t\t\t\n3\tc\t\t\t\n4\td\t\t\t\n",
                         "", "", "1\t2\tbelongs_to\n2\t3\tbelongs_to\n3\t1\tbelongs_to\n");
  KnowledgeBase kb = KnowledgeBase::Load(dir.path());
  EXPECT_FALSE(kb.IsDescendant(ObjectId{1}, ObjectId{4}));
  EXPECT_TRUE(kb.IsDescendant(ObjectId{1}, ObjectId{3}));
  EXPECT_TRUE(kb.IsDescendant(ObjectId{3}, ObjectId{2}));
  auto cycles = kb.FindCycles();
  ASSERT_EQ(cycles.size(), 1u);
  EXPECT_EQ(cycles[0], (std::vector<ObjectId>{ObjectId{1}, ObjectId{2}, ObjectId{3}}));
}

TEST(IsDescendantTest, MatchesBreadthFirstOracleOnRandomGraphs) {
  std::mt19937 rng(11);
  for (int round = 0; round < 20; ++round) {
    KnowledgeBase kb;
    const int n = 12;
    for (int i = 1; i <= n; ++i) {
      Concept c;
      c.id = ObjectId{static_cast<uint64_t>(i)};
      c.name = "c" + std::to_string(i);
      kb.AddConcept(c);
    }
    for (int e = 0; e < 18; ++e) {
      ObjectId h{1 + rng() % n};
      ObjectId t{1 + rng() % n};
      if (h == t) continue;
      try {
        kb.AddRelation(h, t);
      } catch (const Error &) {
      }
    }
    for (int a = 1; a <= n; ++a) {
      for (int b = 1; b <= n; ++b) {
        ObjectId x{static_cast<uint64_t>(a)};
        ObjectId y{static_cast<uint64_t>(b)};
        EXPECT_EQ(kb.IsDescendant(x, y), oracle::UpDistance(kb, x, y) >= 0);
      }
      for (const auto &[anc, d] : kb.AncestorsWithin(ObjectId{static_cast<uint64_t>(a)}, 2)) {
        EXPECT_EQ(oracle::UpDistance(kb, ObjectId{static_cast<uint64_t>(a)}, anc), d);
        EXPECT_LE(d, 2);
        EXPECT_GE(d, 1);
      }
    }
  }
}

TEST(ConceptMethodsTest, BlindPersonExcludesLook) {
  KnowledgeBase kb = testing::ToyKb();
  EXPECT_EQ(kb.ConceptMethods(kHuman), (std::set<ObjectId>{kPlay, kLook}));
  EXPECT_EQ(kb.ConceptMethods(kBlindPerson), (std::set<ObjectId>{kPlay}));
}

TEST(ConceptMethodsTest, IsolatedConceptHasNone) {
  KnowledgeBase kb = testing::ToyKb();
  EXPECT_TRUE(kb.ConceptMethods(ObjectId{77}).empty());
}

TEST(ConceptMethodsTest, DiamondInheritsBoth) {
  TempDir dir;
  testing::WriteKbTables(dir.path(),
                         "1\tA\t\t10\t\n2\tB\t\t11\t\n3\tchild\t\t\t\n",
                         "10\tm1\t\t\n11\tm2\t\t\n", "",
                         "3\t1\tbelongs_to\n3\t2\tbelongs_to\n");
  KnowledgeBase kb = KnowledgeBase::Load(dir.path());
  EXPECT_EQ(kb.ConceptMethods(ObjectId{3}), (std::set<ObjectId>{ObjectId{10}, ObjectId{11}}));
}

TEST(ConceptMethodsTest, ExclusionOnOnePathOnly) {
  // 4 -> 2 (excludes m) -> 1 (has m); 4 -> 3 -> 1. The second path still
  // carries m.
  TempDir dir;
  testing::WriteKbTables(dir.path(),
                         "1\troot\t\t10\t\n2\tx\t\t\t10\n3\ty\t\t\t\n4\tz\t\t\t\n",
                         "10\tm\t\t\n", "",
                         "2\t1\tbelongs_to\n3\t1\tbelongs_to\n4\t2\tbelongs_to\n"
                         "4\t3\tbelongs_to\n");
  KnowledgeBase kb = KnowledgeBase::Load(dir.path());
  EXPECT_TRUE(kb.ConceptMethods(ObjectId{2}).empty());
  EXPECT_EQ(kb.ConceptMethods(ObjectId{4}), (std::set<ObjectId>{ObjectId{10}}));
}

TEST(MethodApplicableTest, PlayTakesBallNotTable) {
  KnowledgeBase kb = testing::ToyKb();
  EXPECT_TRUE(kb.MethodApplicable(kPlay, kBall));
  EXPECT_FALSE(kb.MethodApplicable(kPlay, kTable));
  EXPECT_TRUE(kb.MethodApplicable(kPlay, kBasketball));
}

TEST(MethodApplicableTest, UnconstrainedMethod) {
  KnowledgeBase kb = testing::ToyKb();
  for (const auto &[id, c] : kb.concepts()) EXPECT_TRUE(kb.MethodApplicable(kLook, id));
}

TEST(MethodApplicableTest, ChainThroughEquipment) {
  KnowledgeBase kb = testing::ToyKb();
  Method m;
  m.name = "carry";
  m.objects = {kEquipment};
  ObjectId carry = kb.AddMethod(m);
  EXPECT_TRUE(kb.MethodApplicable(carry, kBasketball));
  EXPECT_FALSE(kb.MethodApplicable(carry, kTable));
  EXPECT_FALSE(kb.MethodApplicable(carry, kObject));
}

TEST(MutationTest, AddConceptThenLink) {
  KnowledgeBase kb = testing::ToyKb();
  Concept c;
  c.name = "costume-genre";
  ObjectId id = kb.AddConcept(c);
  EXPECT_EQ(id, ObjectId{401});
  kb.LinkWord({"costume", id, ObjectKind::kConcept, "NN"});
  std::vector<WordLink> links = kb.LookupWord("costume");
  ASSERT_EQ(links.size(), 1u);
  EXPECT_EQ(links[0].object_id, id);
  EXPECT_EQ(kb.word_count(), 21u);
}

TEST(MutationTest, AddRelationMakesDescendant) {
  KnowledgeBase kb;
  Concept genre;
  genre.name = "genre";
  Concept love;
  love.name = "love";
  ObjectId g = kb.AddConcept(genre);
  ObjectId l = kb.AddConcept(love);
  EXPECT_FALSE(kb.IsDescendant(l, g));
  kb.AddRelation(l, g, "belongs_to");
  EXPECT_TRUE(kb.IsDescendant(l, g));
}

TEST(MutationTest, RejectsBadInput) {
  KnowledgeBase kb = testing::ToyKb();
  const KnowledgeBase before = kb;
  EXPECT_THROW(kb.AddRelation(kFootball, kSport, "causes"), Error);
  EXPECT_EQ(CodeOf([&] { kb.LinkWord({"football", kFootball, ObjectKind::kConcept, "NN"}); }),
            ErrorCode::kDuplicate);
  EXPECT_EQ(CodeOf([&] { kb.LinkWord({"x", ObjectId{999}, ObjectKind::kConcept, "NN"}); }),
            ErrorCode::kIntegrity);
  EXPECT_THROW(kb.LinkWord({"x", kFootball, ObjectKind::kConcept, "ZZ"}), Error);
  Concept dup;
  dup.id = kSport;
  dup.name = "again";
  EXPECT_EQ(CodeOf([&] { kb.AddConcept(dup); }), ErrorCode::kDuplicate);
  Concept dangling;
  dangling.name = "d";
  dangling.methods = {ObjectId{999}};
  EXPECT_EQ(CodeOf([&] { kb.AddConcept(dangling); }), ErrorCode::kIntegrity);
  EXPECT_EQ(kb, before);
}

TEST(CycleTest, FiftyNodeCycleIsFast) {
  KnowledgeBase kb;
  for (uint64_t i = 1; i <= 50; ++i) {
    Concept c;
    c.id = ObjectId{i};
    c.name = "n" + std::to_string(i);
    kb.AddConcept(c);
  }
  for (uint64_t i = 1; i <= 50; ++i) kb.AddRelation(ObjectId{i}, ObjectId{i % 50 + 1});
  Concept outside;
  outside.id = ObjectId{51};
  outside.name = "outside";
  kb.AddConcept(outside);

  const auto start = std::chrono::steady_clock::now();
  for (uint64_t i = 1; i <= 50; ++i) {
    EXPECT_TRUE(kb.IsDescendant(ObjectId{i}, ObjectId{(i + 24) % 50 + 1}));
    EXPECT_FALSE(kb.IsDescendant(ObjectId{i}, ObjectId{51}));
    EXPECT_TRUE(kb.ConceptMethods(ObjectId{i}).empty());
    EXPECT_EQ(kb.AncestorsWithin(ObjectId{i}, 100).size(), 49u);
  }
  ASSERT_EQ(kb.FindCycles().size(), 1u);
  EXPECT_EQ(kb.FindCycles()[0].size(), 50u);
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(ms, 100.0);
}

}  // namespace
}  // namespace kbparse
