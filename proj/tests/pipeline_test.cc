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

#include "kbparse/pipeline.h"

#include <gtest/gtest.h>

#include "kbparse/error.h"
#include "test_support.h"

namespace kbparse {
namespace {

using testing::TempDir;

TEST(ReadCorpusTest, SkipsBlankAndCommentLines) {
  TempDir dir;
  testing::WriteText(dir / "c.jsonl", "# header\n\n{\"text\": \"a\"}\n   \n{\"text\": \"b\"}\n");
  std::vector<CorpusLine> lines = ReadCorpus(dir / "c.jsonl");
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0].line, 3u);
  EXPECT_EQ(lines[1].line, 5u);
  EXPECT_THROW(ReadCorpus(dir / "none.jsonl"), Error);
}

TEST(ParseCorpusTest, ToyCorpusFullyParsed) {
  KnowledgeBase kb = testing::ToyKb();
  GrammarBase gb = testing::ToyGrammar(kb);
  std::vector<CorpusLine> corpus = ReadCorpus(testing::DataDir() / "toy" / "corpus.jsonl");
  ParsedCorpus parsed = ParseCorpus(kb, gb, corpus, {}, 1);
  IterationReport report = Summarize(parsed);
  EXPECT_EQ(report.sentences_total, 3u);
  EXPECT_EQ(report.sentences_parsed, 3u);
  EXPECT_EQ(report.subsentences_total, 4u);
  EXPECT_DOUBLE_EQ(report.subsentence_coverage, 1.0);
}

TEST(ParseCorpusTest, MalformedLinesSkippedAndCounted) {
  KnowledgeBase kb = testing::ToyKb();
  GrammarBase gb = testing::ToyGrammar(kb);
  std::vector<CorpusLine> corpus = {
      {1, R"({"text": "XiaoMing plays basketball."})"},
      {2, R"({"text": )"},
      {3, R"({"txt": "no text key"})"},
      {4, R"({"text": "car moves", "tokens": [{"w": "car", "pos": "ZZ"}]})"},
      {5, R"({"text": "car moves."})"}};
  ParsedCorpus parsed = ParseCorpus(kb, gb, corpus, {}, 2);
  EXPECT_EQ(parsed.lines, 5u);
  EXPECT_EQ(parsed.skipped, 3u);
  ASSERT_EQ(parsed.sentences.size(), 2u);
  EXPECT_EQ(parsed.sentences[1].text, "car moves.");
  EXPECT_EQ(Summarize(parsed).skipped_lines, 3u);
}

TEST(ParseCorpusTest, OutputIndependentOfJobs) {
  KnowledgeBase kb = testing::ToyKb();
  GrammarBase gb = testing::ToyGrammar(kb);
  std::vector<CorpusLine> corpus;
  const std::vector<std::string> texts = {
      "XiaoMing plays basketball.", "football player looks, blind person plays football.",
      "basketball player plays table.", "qwzx moves, car.", "XiaoMing plays drama"};
  for (size_t i = 0; i < 200; ++i) {
    corpus.push_back({i + 1, "{\"text\": \"" + texts[i % texts.size()] + "\"}"});
  }
  for (ParseMode mode : {ParseMode::kFast, ParseMode::kExhaustive}) {
    ParseOptions options;
    options.mode = mode;
    const std::string one = ParsedCorpusToJsonl(ParseCorpus(kb, gb, corpus, options, 1));
    EXPECT_EQ(ParsedCorpusToJsonl(ParseCorpus(kb, gb, corpus, options, 4)), one);
    EXPECT_EQ(ParsedCorpusToJsonl(ParseCorpus(kb, gb, corpus, options, 1)), one);
  }
}

TEST(ReportTest, JsonFields) {
  IterationReport r;
  r.iteration = 2;
  r.candidates_emitted = {1, 2, 3, 4, 5};
  nlohmann::ordered_json j = ReportToJson(r);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{
                      "iteration", "sentences_total", "sentences_parsed",
                      "subsentences_total", "subsentences_parsed", "subsentence_coverage",
                      "candidates_emitted", "skipped_lines", "fallbacks",
                      "wall_time_seconds"}));
  EXPECT_EQ(j["candidates_emitted"]["phrase_pattern"], 4);
}

class WorkspaceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    testing::CopyTree(testing::DataDir() / "iterate", dir_.path());
    config_ = LoadConfig(dir_ / "iterate.conf");
    corpus_ = ReadCorpus(dir_ / "corpus.jsonl");
  }

  Workspace Open() {
    return Workspace::Open(dir_ / "kb", dir_ / "grammar", dir_ / "candidates.jsonl");
  }

  TempDir dir_;
  Config config_;
  std::vector<CorpusLine> corpus_;
};

TEST_F(WorkspaceTest, AcceptRaisesCoverage) {
  Workspace ws = Open();
  IterationReport first = ws.RunRound(corpus_, config_);
  EXPECT_EQ(first.iteration, 1u);
  EXPECT_DOUBLE_EQ(first.subsentence_coverage, 0.6);
  const CandidateRule *c = ws.candidates().Find(4);
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->kind(), CandidateKind::kPhrasePattern);

  EXPECT_EQ(ws.Decide(4, {true, std::nullopt}), std::nullopt);
  IterationReport second = ws.RunRound(corpus_, config_);
  EXPECT_EQ(second.iteration, 2u);
  EXPECT_DOUBLE_EQ(second.subsentence_coverage, 0.8);

  Workspace reopened = Open();
  EXPECT_EQ(reopened.gb(), ws.gb());
  EXPECT_EQ(reopened.candidates().Find(4)->status, CandidateStatus::kAccepted);
}

TEST_F(WorkspaceTest, RejectKeepsCoverage) {
  Workspace ws = Open();
  IterationReport first = ws.RunRound(corpus_, config_);
  auto grammar_before = testing::Snapshot(dir_ / "grammar");
  ws.Decide(4, {false, std::nullopt});
  EXPECT_EQ(testing::Snapshot(dir_ / "grammar"), grammar_before);
  IterationReport second = ws.RunRound(corpus_, config_);
  EXPECT_DOUBLE_EQ(second.subsentence_coverage, 0.6);
  EXPECT_TRUE(second.SameOutcome(first));
}

TEST_F(WorkspaceTest, AcceptByEditingFile) {
  Workspace ws = Open();
  ws.RunRound(corpus_, config_);
  CandidateStore store = CandidateStore::Load(dir_ / "candidates.jsonl");
  store.Find(4)->status = CandidateStatus::kAccepted;
  store.Save(dir_ / "candidates.jsonl");

  ws.ReloadCandidates();
  EXPECT_EQ(ws.ApplyAccepted(), 1u);
  EXPECT_EQ(ws.ApplyAccepted(), 0u);
  EXPECT_TRUE(CandidateStore::Load(dir_ / "candidates.jsonl").Find(4)->applied);
  EXPECT_DOUBLE_EQ(ws.RunRound(corpus_, config_).subsentence_coverage, 0.8);
}

TEST_F(WorkspaceTest, RoundsWithoutDecisionsRepeat) {
  Workspace ws = Open();
  IterationReport first = ws.RunRound(corpus_, config_);
  size_t count = ws.candidates().candidates().size();
  IterationReport second = ws.RunRound(corpus_, config_);
  EXPECT_TRUE(second.SameOutcome(first));
  EXPECT_EQ(ws.candidates().candidates().size(), count);
}

TEST_F(WorkspaceTest, IdsMonotonicAcrossRounds) {
  Workspace ws = Open();
  ws.RunRound(corpus_, config_);
  uint64_t last = ws.candidates().candidates().back().id;
  ws.Decide(4, {true, std::nullopt});
  ws.RunRound(corpus_, config_);
  for (const CandidateRule &c : ws.candidates().candidates()) {
    if (c.created_at == 2) EXPECT_GT(c.id, last);
  }
  uint64_t prev = 0;
  for (const CandidateRule &c : ws.candidates().candidates()) {
    EXPECT_GT(c.id, prev);
    prev = c.id;
  }
}

TEST_F(WorkspaceTest, DecideUnknownId) {
  Workspace ws = Open();
  try {
    ws.Decide(42, {true, std::nullopt});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
}

}  // namespace
}  // namespace kbparse
