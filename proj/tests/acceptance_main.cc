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

// Acceptance runner: one PASS/FAIL line per criterion P1..P7, exit status 1
// if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <spdlog/spdlog.h>

#include "kbparse/candidate.h"
#include "kbparse/config.h"
#include "kbparse/error.h"
#include "kbparse/learner.h"
#include "kbparse/parser.h"
#include "kbparse/pipeline.h"
#include "oracles.h"
#include "test_support.h"

namespace kbparse {
namespace {

using Clock = std::chrono::steady_clock;
using testing::TempDir;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

// Collects failed checks for one criterion.
class Checks {
 public:
  void Expect(bool ok, const std::string &what) {
    ++total_;
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  size_t total() const { return total_; }
  const std::vector<std::string> &failures() const { return failures_; }

 private:
  size_t total_ = 0;
  std::vector<std::string> failures_;
};

struct Outcome {
  bool pass = false;
  std::string summary;
  std::vector<std::string> failures;
};

Outcome Finish(const Checks &checks, const std::string &summary) {
  return {checks.ok(), summary, checks.failures()};
}

std::vector<Element> Elements(const std::vector<Word> &words) {
  std::vector<Element> out;
  for (const Word &w : words) out.push_back(Element::FromWord(w));
  return out;
}

Outcome P1() {
  Checks c;
  KnowledgeBase kb = testing::ToyKb();
  GrammarBase gb;
  PhrasePattern word_pattern;
  word_pattern.features = {Feature::Word("basketball"), Feature::Word("player")};
  word_pattern.core_word_index = 1;
  word_pattern.pos_tag = "NN";
  gb.AddPhrasePattern(kb, word_pattern);
  PhrasePattern concept_pattern = word_pattern;
  concept_pattern.features = {Feature::Concept(ObjectId{332}), Feature::Word("player")};
  gb.AddPhrasePattern(kb, concept_pattern);
  const PhrasePattern &p1 = *gb.FindPhrasePattern(1);
  const PhrasePattern &p2 = *gb.FindPhrasePattern(2);

  auto matches = [&](const PhrasePattern &p, const std::string &first) {
    std::vector<Element> e =
        Elements({testing::W(kb, first), testing::W(kb, "player")});
    return MatchPhrasePattern(kb, p, e, 0).has_value();
  };
  c.Expect(matches(p1, "basketball"), "word pattern matches basketball player");
  for (const char *other : {"football", "volleyball", "table"}) {
    c.Expect(!matches(p1, other), std::string("word pattern rejects ") + other + " player");
  }
  c.Expect(matches(p2, "football"), "concept pattern matches football player");
  c.Expect(matches(p2, "volleyball"), "concept pattern matches volleyball player");
  c.Expect(!matches(p2, "table"), "concept pattern rejects table player");
  std::optional<Element> phrase = MatchPhrasePattern(
      kb, p1, Elements({testing::W(kb, "basketball"), testing::W(kb, "player")}), 0);
  c.Expect(phrase && phrase->value == "basketball player" && phrase->pos == "NN" &&
               CoreWord(*phrase) == "player",
           "matched phrase value, pos and core word");

  SubsentencePattern svo;
  svo.parse_str = "NN|VV|NN";
  svo.meaning = ParseMeaningString("nsubj:0:1,dobj:1:2");
  gb.AddSubsentencePattern(svo);
  SubsentenceParse parse = SingleRecursionParse(
      kb, gb,
      {testing::W(kb, "XiaoMing"), testing::W(kb, "plays"), testing::W(kb, "basketball")});
  c.Expect(parse.status == ParseStatus::kParsed && parse.parse_str == "NN|VV|NN",
           "XiaoMing plays basketball parses as NN|VV|NN");
  std::vector<ExtractedRelation> expected = {
      {RelationType::kNsubj, "XiaoMing", "plays", 0, 1},
      {RelationType::kDobj, "plays", "basketball", 1, 2}};
  c.Expect(parse.relations == expected, "exactly nsubj(0,1) and dobj(1,2)");
  return Finish(c, std::to_string(c.total()) + " worked-example checks");
}

// Random grammars of at most six patterns over a small tag and word pool.
Outcome P2() {
  Checks c;
  KnowledgeBase kb = testing::ToyKb();
  const std::vector<Word> pool = {
      testing::W(kb, "football"),   testing::W(kb, "volleyball"),
      testing::W(kb, "basketball"), testing::W(kb, "player"),
      testing::W(kb, "ball"),       testing::W(kb, "table"),
      testing::W(kb, "plays"),      testing::W(kb, "car"),
      testing::W("a", "DT"),        testing::W("big", "JJ"),
      testing::W("red", "JJ")};
  const std::vector<std::string> tags = {"NN", "JJ", "DT", "VV"};
  std::mt19937 rng(2026);

  const size_t cases = 1500;
  size_t checked = 0;
  size_t terminals = 0;
  const Clock::time_point start = Clock::now();
  const GrammarBase seed = testing::ToyGrammar(kb);
  for (size_t i = 0; i < cases; ++i) {
    GrammarBase fresh;
    for (const auto &[key, s] : seed.subsentence_patterns()) fresh.AddSubsentencePattern(s);
    std::vector<Word> words;
    for (size_t n = 1 + rng() % 8; n > 0; --n) words.push_back(pool[rng() % pool.size()]);

    // Most patterns are read off a window of the input, the rest drawn blind.
    const size_t n_patterns = 1 + rng() % 6;
    for (size_t k = 0; k < n_patterns; ++k) {
      PhrasePattern p;
      const size_t arity = 2 + rng() % 2;
      const bool from_input = words.size() >= arity && rng() % 4 != 0;
      const size_t at = from_input ? rng() % (words.size() - arity + 1) : 0;
      for (size_t f = 0; f < arity; ++f) {
        const Word &w = from_input ? words[at + f] : pool[rng() % pool.size()];
        std::vector<ObjectId> linked;
        for (const ObjectRef &ref : w.links) {
          if (ref.kind == ObjectKind::kConcept) linked.push_back(ref.id);
        }
        switch (rng() % 4) {
          case 0: p.features.push_back(Feature::Word(w.value)); break;
          case 1:
            if (!linked.empty()) {
              std::vector<ObjectId> up = {linked[rng() % linked.size()]};
              for (const auto &[a, depth] : kb.AncestorsWithin(up[0], 3)) up.push_back(a);
              p.features.push_back(Feature::Concept(up[rng() % up.size()]));
              break;
            }
            [[fallthrough]];
          case 2: p.features.push_back(Feature::Pos(w.pos)); break;
          default:
            p.features.push_back(Feature::Pos(tags[rng() % tags.size()]));
        }
      }
      if (rng() % 5 != 0) p.core_word_index = rng() % arity;
      p.pos_tag = tags[rng() % tags.size()];
      try {
        fresh.AddPhrasePattern(kb, p);
      } catch (const Error &) {
      }
    }

    std::set<std::string> exhaustive;
    try {
      for (const SubsentenceParse &p : ExhaustiveParse(kb, fresh, words)) {
        exhaustive.insert(oracle::SequenceSignature(p.elements));
      }
    } catch (const Error &e) {
      c.Expect(false, "case " + std::to_string(i) + ": " + e.what());
      continue;
    }
    const std::string single =
        oracle::SequenceSignature(SingleRecursionParse(kb, fresh, words).elements);
    c.Expect(exhaustive.count(single) == 1,
             "case " + std::to_string(i) + ": single recursion result " + single +
                 " missing from exhaustive set");
    c.Expect(exhaustive == oracle::EnumerateTerminals(kb, fresh, words),
             "case " + std::to_string(i) + ": exhaustive set differs from enumerator");
    ++checked;
    terminals += exhaustive.size();
  }
  const double elapsed = Seconds(start);
  c.Expect(checked >= 1000, "at least 1000 cases checked");
  c.Expect(elapsed < 60.0, "suite under 60 s");
  std::ostringstream s;
  s << checked << "/" << cases << " random cases agree, " << terminals
    << " terminal states, " << elapsed << " s";
  return Finish(c, s.str());
}

std::map<std::string, size_t> SupportByKey(const std::vector<CandidateRule> &found) {
  std::map<std::string, size_t> out;
  for (const CandidateRule &c : found) out[oracle::CandidateOracleKey(c)] = c.support;
  return out;
}

void CompareDiscovery(Checks &c, const std::string &label, const KnowledgeBase &kb,
                      const GrammarBase &gb, const std::vector<LearnSubsentence> &corpus,
                      const LearnerConfig &config, size_t *compared) {
  auto expect_same = [&](const std::string &op, const std::vector<CandidateRule> &found,
                         const std::map<std::string, size_t> &want) {
    c.Expect(SupportByKey(found) == want && found.size() == want.size(),
             label + ": " + op + " support differs from counter");
    *compared += want.size();
  };
  expect_same("concept_rule", DiscoverConceptRules(kb, gb, config),
              oracle::ConceptRuleSupport(kb, config));
  expect_same("new_concept", DiscoverNewConcepts(kb, corpus, config),
              oracle::NewConceptSupport(kb, corpus, config));
  expect_same("concept_feature", DiscoverConceptFeatures(corpus, config),
              oracle::ConceptFeatureSupport(corpus, config));
  expect_same("cooccur", DiscoverCooccurPatterns(gb, corpus, config),
              oracle::CooccurSupport(gb, corpus, config));
  expect_same("subsentence_pattern", DiscoverSubsentencePatterns(gb, corpus, config),
              oracle::SubsentenceSupport(gb, corpus, config));
  for (const CandidateRule &t : DiscoverTrigramPatterns(kb, gb, corpus, config)) {
    const auto &p = std::get<PhrasePatternPayload>(t.payload);
    c.Expect(oracle::TrigramSupport(kb, corpus, p.pattern.features,
                                    config.generalization_levels) == t.support,
             label + ": trigram support differs for " + FeaturesToString(p.pattern.features));
    ++*compared;
  }
}

KnowledgeBase ProvinceKb() {
  TempDir dir;
  testing::WriteKbTables(dir.path(),
                         "1\tentity\t\t\t\n10\tprovince\t\t\t\n11\thebei\t\t\t\n"
                         "12\tshandong\t\t\t\n13\thunan\t\t\t\n14\thenan\t\t\t\n"
                         "20\tcity\t\t\t\n21\tbeijing\t\t\t\n",
                         "",
                         "Hebei Province\t11\tconcept\tNN\n"
                         "Shandong Province\t12\tconcept\tNN\n"
                         "Hunan Province\t13\tconcept\tNN\n"
                         "Henan Province\t14\tconcept\tNN\n"
                         "Beijing\t21\tconcept\tNN\n",
                         "10\t1\tbelongs_to\n11\t10\tbelongs_to\n12\t10\tbelongs_to\n"
                         "13\t10\tbelongs_to\n14\t10\tbelongs_to\n20\t1\tbelongs_to\n"
                         "21\t20\tbelongs_to\n");
  return KnowledgeBase::Load(dir.path());
}

Outcome P3() {
  Checks c;
  size_t compared = 0;

  // Parse output of the first synthetic sentences, capped at 1000
  // subsentences.
  const std::filesystem::path synthetic = testing::DataDir() / "synthetic";
  KnowledgeBase kb = KnowledgeBase::Load(synthetic / "kb");
  GrammarBase gb = GrammarBase::Load(synthetic / "grammar", kb);
  std::vector<CorpusLine> lines = ReadCorpus(synthetic / "corpus.jsonl");
  lines.resize(500);
  std::vector<LearnSubsentence> corpus =
      LearnInput(kb, ParseCorpus(kb, gb, lines, {}, 1));
  if (corpus.size() > 1000) corpus.resize(1000);
  for (size_t min_freq : {2, 3, 5}) {
    LearnerConfig config;
    config.min_freq = min_freq;
    config.min_coverage = 0.2;
    CompareDiscovery(c, "synthetic min_freq=" + std::to_string(min_freq), kb, gb, corpus,
                     config, &compared);
  }
  LearnerConfig chars;
  chars.concept_rule_unit = AffixUnit::kChar;
  chars.min_coverage = 0.3;
  chars.min_precision = 0.1;
  CompareDiscovery(c, "synthetic char affixes", kb, gb, corpus, chars, &compared);

  // Random corpora over a tiny vocabulary, dense in repeats.
  std::mt19937 rng(7);
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f", "g"};
  const std::vector<std::string> tags = {"NN", "NN", "VV", "QA", "JJ"};
  for (int round = 0; round < 30; ++round) {
    std::vector<LearnSubsentence> random_corpus;
    for (int s = 0; s < 300; ++s) {
      std::vector<std::pair<std::string, std::string>> tokens;
      for (int n = 1 + rng() % 6; n > 0; --n) {
        tokens.push_back({vocab[rng() % vocab.size()], tags[rng() % tags.size()]});
      }
      random_corpus.push_back(testing::Sub(tokens, rng() % 4 == 0));
    }
    LearnerConfig config;
    config.window = 1 + rng() % 3;
    config.max_ngram = 2 + rng() % 3;
    config.min_freq = 2 + rng() % 8;
    CompareDiscovery(c, "random round " + std::to_string(round), KnowledgeBase(),
                     GrammarBase(), random_corpus, config, &compared);
  }

  // Planted examples under default thresholds.
  std::vector<CandidateRule> rules = DiscoverConceptRules(ProvinceKb(), GrammarBase(), {});
  bool province = rules.size() == 1;
  if (province) {
    const auto &p = std::get<ConceptRulePayload>(rules[0].payload);
    province = p.concept_id == ObjectId{10} && p.position == AffixPosition::kSuffix &&
               p.chars == "Province" && p.coverage_ratio == 1.0;
  }
  c.Expect(province, "province suffix rule recovered");

  std::vector<LearnSubsentence> movies = {
      testing::Sub({{"I", "NN"}, {"like", "VV"}, {"love", "UNK"}, {"movie", "NN"}}),
      testing::Sub({{"comedy", "NN"}, {"movie", "NN"}, {"is", "VV"}, {"funny", "UNK"}}),
      testing::Sub({{"costume", "UNK"}, {"movie", "NN"}})};
  std::vector<CandidateRule> features = DiscoverConceptFeatures(movies, {});
  bool genre = features.size() == 1;
  if (genre) {
    const auto &p = std::get<ConceptFeaturePayload>(features[0].payload);
    std::vector<std::string> members;
    for (const TaggedToken &m : p.members) members.push_back(m.w);
    genre = p.anchor == "movie" && p.side == Side::kBefore &&
            members == std::vector<std::string>{"comedy", "costume", "love"};
  }
  c.Expect(genre, "movie genre concept recovered");

  return Finish(c, std::to_string(compared) + " candidate supports match the counters, " +
                       "planted examples recovered");
}

Outcome P4() {
  Checks c;
  std::ostringstream s;
  for (bool accept : {true, false}) {
    TempDir dir;
    testing::CopyTree(testing::DataDir() / "iterate", dir.path());
    Config config = LoadConfig(dir / "iterate.conf");
    std::vector<CorpusLine> corpus = ReadCorpus(dir / "corpus.jsonl");
    Workspace ws = Workspace::Open(dir / "kb", dir / "grammar", dir / "candidates.jsonl");
    IterationReport first = ws.RunRound(corpus, config);
    c.Expect(first.sentences_total == 10 && first.subsentence_coverage == 0.6,
             "initial coverage 0.6 on 10 sentences");
    const CandidateRule *pattern = ws.candidates().Find(4);
    c.Expect(pattern != nullptr && pattern->kind() == CandidateKind::kPhrasePattern,
             "candidate 4 is the phrase pattern");
    ws.Decide(4, {accept, std::nullopt});
    IterationReport second = ws.RunRound(corpus, config);
    const double want = accept ? 0.8 : 0.6;
    c.Expect(second.subsentence_coverage == want,
             std::string(accept ? "accept" : "reject") + " then re-iterate gives " +
                 std::to_string(second.subsentence_coverage));
    s << (accept ? "accept: " : ", reject: ") << first.subsentence_coverage << " -> "
      << second.subsentence_coverage;
  }
  return Finish(c, s.str());
}

Outcome P5() {
  Checks c;
  const std::filesystem::path data = testing::DataDir();
  size_t stores = 0;
  for (const char *fixture : {"toy", "iterate", "synthetic"}) {
    KnowledgeBase kb = KnowledgeBase::Load(data / fixture / "kb");
    GrammarBase gb = GrammarBase::Load(data / fixture / "grammar", kb);
    TempDir dir;
    kb.Save(dir / "kb");
    gb.Save(dir / "grammar");
    KnowledgeBase kb_back = KnowledgeBase::Load(dir / "kb");
    c.Expect(kb_back == kb, std::string(fixture) + ": knowledge base round trip");
    c.Expect(GrammarBase::Load(dir / "grammar", kb_back) == gb,
             std::string(fixture) + ": grammar round trip");
    c.Expect(testing::Snapshot(dir / "kb") == testing::Snapshot(data / fixture / "kb"),
             std::string(fixture) + ": knowledge base tables byte-identical");
    c.Expect(testing::Snapshot(dir / "grammar") ==
                 testing::Snapshot(data / fixture / "grammar"),
             std::string(fixture) + ": grammar tables byte-identical");

    std::vector<CorpusLine> corpus = ReadCorpus(data / fixture / "corpus.jsonl");
    for (ParseMode mode : {ParseMode::kFast, ParseMode::kExhaustive}) {
      ParseOptions options;
      options.mode = mode;
      const std::string one = ParsedCorpusToJsonl(ParseCorpus(kb, gb, corpus, options, 1));
      const std::string again = ParsedCorpusToJsonl(ParseCorpus(kb, gb, corpus, options, 1));
      const std::string four = ParsedCorpusToJsonl(ParseCorpus(kb, gb, corpus, options, 4));
      const std::string label = std::string(fixture) +
                                (mode == ParseMode::kFast ? " fast" : " exhaustive");
      c.Expect(one == again, label + ": identical across runs");
      c.Expect(one == four, label + ": identical across 1 and 4 workers");
    }

    CandidateStore store;
    Config config;
    config.learner.min_freq = 2;
    store.Merge(DiscoverAll(kb, gb, LearnInput(kb, ParseCorpus(kb, gb, corpus, {}, 1)),
                            config.learner),
                1);
    store.Save(dir / "candidates.jsonl");
    CandidateStore back = CandidateStore::Load(dir / "candidates.jsonl");
    c.Expect(back == store, std::string(fixture) + ": candidates round trip");
    back.Save(dir / "again.jsonl");
    c.Expect(testing::ReadText(dir / "again.jsonl") ==
                 testing::ReadText(dir / "candidates.jsonl"),
             std::string(fixture) + ": candidates file byte-identical");
    stores += store.candidates().size();
  }
  return Finish(c, "3 fixtures, fast and exhaustive output stable over runs and workers, " +
                       std::to_string(stores) + " candidates round-tripped");
}

Outcome P6() {
  Checks c;
  const std::filesystem::path synthetic = testing::DataDir() / "synthetic";
  KnowledgeBase kb = KnowledgeBase::Load(synthetic / "kb");
  GrammarBase gb = GrammarBase::Load(synthetic / "grammar", kb);
  std::vector<CorpusLine> corpus = ReadCorpus(synthetic / "corpus.jsonl");
  c.Expect(corpus.size() == 10000, "corpus has 10000 sentences");
  c.Expect(gb.phrase_patterns().size() <= 100, "at most 100 phrase patterns");

  Clock::time_point start = Clock::now();
  ParsedCorpus parsed = ParseCorpus(kb, gb, corpus, {}, 1);
  const double parse_seconds = Seconds(start);
  const double rate = static_cast<double>(parsed.sentences.size()) / parse_seconds;
  c.Expect(parsed.sentences.size() == corpus.size(), "every sentence parsed");
  c.Expect(rate >= 30.0, "fast-mode rate at least 30 sentences/s");

  TempDir dir;
  testing::CopyTree(synthetic, dir.path());
  Workspace ws = Workspace::Open(dir / "kb", dir / "grammar", dir / "candidates.jsonl");
  start = Clock::now();
  IterationReport report = ws.RunRound(corpus, Config());
  const double round_seconds = Seconds(start);
  c.Expect(round_seconds <= 120.0, "parse+learn round within 2 minutes");

  std::ostringstream s;
  s << static_cast<long long>(rate) << " sentences/s single-threaded (target 100, floor 30), "
    << "parse+learn round " << round_seconds << " s with "
    << ws.candidates().candidates().size() << " candidates, coverage "
    << report.subsentence_coverage;
  return Finish(c, s.str());
}

Outcome P7() {
  Checks c;
  TempDir dir;
  std::string concepts;
  std::string relations;
  for (int i = 1; i <= 50; ++i) {
    concepts += std::to_string(i) + "\tnode" + std::to_string(i) + "\t\t\t\n";
    relations += std::to_string(i) + "\t" + std::to_string(i % 50 + 1) + "\tbelongs_to\n";
  }
  concepts += "51\toutside\t\t\t\n";
  relations += "51\t1\tbelongs_to\n";
  testing::WriteKbTables(dir.path(), concepts, "1\tvisit\t25\t\n",
                         "ring\t1\tconcept\tNN\nvisits\t1\tmethod\tVV\n", relations);

  Clock::time_point start = Clock::now();
  KnowledgeBase kb = KnowledgeBase::Load(dir.path());
  size_t reachable = 0;
  for (uint64_t a = 1; a <= 51; ++a) {
    for (uint64_t b = 1; b <= 51; ++b) {
      if (kb.IsDescendant(ObjectId{a}, ObjectId{b})) ++reachable;
    }
    kb.ConceptMethods(ObjectId{a});
    kb.MethodApplicable(ObjectId{1}, ObjectId{a});
    kb.AncestorsWithin(ObjectId{a}, 100);
  }
  std::vector<std::vector<ObjectId>> cycles = kb.FindCycles();
  const double traversal_ms = Seconds(start) * 1000.0;
  c.Expect(traversal_ms < 100.0, "traversals under 100 ms");
  c.Expect(reachable == 50 * 50 + 51, "cycle members reach each other, outside reaches all");
  c.Expect(cycles.size() == 1 && cycles[0].size() == 50, "one 50-node cycle reported");

  GrammarBase gb = testing::ToyGrammar(testing::ToyKb());
  KnowledgeBase toy = testing::ToyKb();
  std::vector<CorpusLine> corpus = {
      {1, R"({"text": "XiaoMing plays basketball."})"},
      {2, R"({"text": "unterminated)"},
      {3, R"(["not", "an", "object"])"},
      {4, R"({"text": 42})"},
      {5, R"({"text": "car moves", "tokens": [{"w": "car", "pos": "ZZ"}]})"},
      {6, R"({"text": "a car", "tokens": [{"w": "a"}]})"},
      {7, R"({"text": "car moves."})"}};
  size_t skipped = 0;
  size_t parsed_sentences = 0;
  try {
    ParsedCorpus parsed = ParseCorpus(toy, gb, corpus, {}, 2);
    skipped = parsed.skipped;
    parsed_sentences = parsed.sentences.size();
  } catch (const std::exception &e) {
    c.Expect(false, std::string("pipeline threw: ") + e.what());
  }
  c.Expect(skipped == 5 && parsed_sentences == 2, "5 malformed lines skipped, 2 parsed");

  std::ostringstream s;
  s << "50-node cycle traversals " << traversal_ms << " ms, " << skipped
    << " malformed lines skipped and counted";
  return Finish(c, s.str());
}

}  // namespace
}  // namespace kbparse

int main() {
  spdlog::set_level(spdlog::level::err);
  struct Criterion {
    const char *name;
    std::function<kbparse::Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"P1 worked examples", kbparse::P1},     {"P2 oracle containment", kbparse::P2},
      {"P3 discovery oracles", kbparse::P3},   {"P4 iteration monotonicity", kbparse::P4},
      {"P5 determinism and persistence", kbparse::P5},
      {"P6 throughput", kbparse::P6},          {"P7 robustness", kbparse::P7}};
  bool all = true;
  for (const Criterion &criterion : criteria) {
    kbparse::Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception &e) {
      outcome.pass = false;
      outcome.summary = std::string("aborted: ") + e.what();
    }
    all = all && outcome.pass;
    std::cout << (outcome.pass ? "PASS " : "FAIL ") << criterion.name << ": "
              << outcome.summary << std::endl;
    for (size_t i = 0; i < outcome.failures.size() && i < 10; ++i) {
      std::cout << "    " << outcome.failures[i] << "\n";
    }
  }
  return all ? 0 : 1;
}
