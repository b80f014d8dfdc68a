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

#include "kbparse/service.h"

#include <memory>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "test_support.h"

namespace kbparse {
namespace {

using nlohmann::json;

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    testing::CopyTree(testing::DataDir() / "iterate", dir_.path());
    config_ = LoadConfig(dir_ / "iterate.conf");
    Workspace seed = Open();
    seed.RunRound(ReadCorpus(dir_ / "corpus.jsonl"), config_);
  }

  void TearDown() override {
    if (service_) service_->Stop();
    if (thread_.joinable()) thread_.join();
  }

  Workspace Open() {
    return Workspace::Open(dir_ / "kb", dir_ / "grammar", dir_ / "candidates.jsonl");
  }

  void Start(bool with_corpus = true) {
    std::optional<std::filesystem::path> corpus;
    if (with_corpus) corpus = dir_ / "corpus.jsonl";
    service_ = std::make_unique<ReviewService>(Open(), config_, corpus);
    port_ = service_->Bind("127.0.0.1", 0);
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { service_->Serve(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }

  json Get(const std::string &path, int expected = 200) {
    httplib::Result r = client_->Get(path);
    EXPECT_TRUE(r) << path;
    if (!r) return json();
    EXPECT_EQ(r->status, expected) << path << " " << r->body;
    return json::parse(r->body);
  }

  json Post(const std::string &path, const std::string &body, int expected = 200) {
    httplib::Result r = client_->Post(path, body, "application/json");
    EXPECT_TRUE(r) << path;
    if (!r) return json();
    EXPECT_EQ(r->status, expected) << path << " " << r->body;
    return json::parse(r->body);
  }

  testing::TempDir dir_;
  Config config_;
  std::unique_ptr<ReviewService> service_;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
  int port_ = 0;
};

TEST_F(ServiceTest, Stats) {
  Start();
  json stats = Get("/stats");
  EXPECT_EQ(stats["concepts"], Open().kb().concepts().size());
  EXPECT_EQ(stats["candidates"]["pending"], 5);
  EXPECT_EQ(stats["candidates"]["accepted"], 0);
  EXPECT_TRUE(stats["iterate_available"].get<bool>());
  EXPECT_TRUE(stats["last_report"].is_null());
}

TEST_F(ServiceTest, CandidateListing) {
  Start();
  httplib::Result r = client_->Get("/candidates");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->get_header_value("X-Total-Count"), "5");
  json all = json::parse(r->body);
  ASSERT_EQ(all.size(), 5u);
  for (size_t i = 1; i < all.size(); ++i) {
    EXPECT_GE(all[i - 1]["support"].get<int>(), all[i]["support"].get<int>());
  }

  json features = Get("/candidates?kind=concept_feature");
  ASSERT_EQ(features.size(), 2u);
  EXPECT_EQ(features[0]["kind"], "concept_feature");

  r = client_->Get("/candidates?per_page=2&page=3");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->get_header_value("X-Total-Count"), "5");
  EXPECT_EQ(json::parse(r->body).size(), 1u);
  EXPECT_TRUE(Get("/candidates?per_page=2&page=9").empty());
  EXPECT_TRUE(Get("/candidates?status=accepted").empty());

  Get("/candidates?status=maybe", 400);
  Get("/candidates?kind=grammar", 400);
  Get("/candidates?page=0", 400);
  Get("/candidates?per_page=5000", 400);
}

TEST_F(ServiceTest, SingleCandidate) {
  Start();
  json c = Get("/candidates/4");
  EXPECT_EQ(c["id"], 4);
  EXPECT_EQ(c["kind"], "phrase_pattern");
  EXPECT_EQ(c["payload"]["features"], "word:stock|word:price");
  Get("/candidates/99", 404);
}

TEST_F(ServiceTest, DecisionWriteThenRead) {
  Start();
  json c = Post("/candidates/4/decision", R"({"decision": "accept"})");
  EXPECT_EQ(c["status"], "accepted");
  EXPECT_TRUE(c["applied"].get<bool>());
  EXPECT_EQ(Get("/candidates/4")["status"], "accepted");
  EXPECT_EQ(CandidateStore::Load(dir_ / "candidates.jsonl").Find(4)->status,
            CandidateStatus::kAccepted);
  EXPECT_NE(testing::ReadText(dir_ / "grammar" / "phrase_patterns.tsv")
                .find("word:stock|word:price"),
            std::string::npos);
  json grammar = Get("/grammar/phrase_patterns");
  EXPECT_EQ(grammar.back()["features"], "word:stock|word:price");
  EXPECT_EQ(grammar.back()["status"], "accepted");

  Post("/candidates/4/decision", R"({"decision": "reject"})", 409);
  Post("/candidates/2/decision", R"({"decision": "reject"})");
  EXPECT_EQ(Get("/stats")["candidates"]["rejected"], 1);
  EXPECT_EQ(Get("/candidates?status=rejected").size(), 1u);
}

TEST_F(ServiceTest, DecisionErrors) {
  Start();
  Post("/candidates/99/decision", R"({"decision": "accept"})", 404);
  Post("/candidates/4/decision", "not json", 400);
  Post("/candidates/4/decision", R"({"verdict": "accept"})", 400);
  Post("/candidates/4/decision", R"({"decision": "maybe"})", 400);
  Post("/candidates/5/decision", R"({"decision": "accept", "meaning": "amod:0:1"})", 400);
  Post("/candidates/4/decision", R"({"decision": "accept", "meaning": "nsubj:0:1"})", 400);
  EXPECT_EQ(Get("/candidates/4")["status"], "pending");
}

TEST_F(ServiceTest, SubsentenceAcceptNeedsMeaning) {
  Start();
  json c = Post("/candidates/5/decision", R"({"decision": "accept"})", 422);
  EXPECT_EQ(c["status"], "pending");
  EXPECT_TRUE(c.contains("error_note"));
  c = Post("/candidates/5/decision", R"({"decision": "accept", "meaning": "nsubj:1:2"})");
  EXPECT_EQ(c["status"], "accepted");
  EXPECT_FALSE(c.contains("error_note"));
  json patterns = Get("/grammar/subsentence_patterns");
  bool found = false;
  for (const json &p : patterns) {
    if (p["parse_str"] == "NN|NN|VV") {
      found = true;
      EXPECT_EQ(p["meaning"], "nsubj:1:2");
    }
  }
  EXPECT_TRUE(found);
}

TEST_F(ServiceTest, IterateAfterAccept) {
  Start();
  Post("/candidates/4/decision", R"({"decision": "accept"})");
  json reports = Post("/iterate", R"({"rounds": 2})");
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0]["iteration"], 2);
  EXPECT_DOUBLE_EQ(reports[0]["subsentence_coverage"].get<double>(), 0.8);
  EXPECT_EQ(Get("/stats")["last_report"]["iteration"], 3);
  Post("/iterate", R"({"rounds": -1})", 400);
  Post("/iterate", R"([1])", 400);
}

TEST_F(ServiceTest, IterateWithoutCorpus) {
  Start(false);
  Post("/iterate", "", 409);
  EXPECT_FALSE(Get("/stats")["iterate_available"].get<bool>());
}

TEST_F(ServiceTest, ParseEndpoint) {
  Start();
  json parse = Get("/parse?text=XiaoMing%20plays%20football.");
  EXPECT_EQ(parse["text"], "XiaoMing plays football.");
  ASSERT_EQ(parse["subsentences"].size(), 1u);
  EXPECT_EQ(parse["subsentences"][0]["status"], "parsed");
  EXPECT_EQ(parse["coverage"], 1.0);
  Get("/parse", 400);
}

}  // namespace
}  // namespace kbparse
