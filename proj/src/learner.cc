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

#include "kbparse/learner.h"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "kbparse/error.h"
#include "kbparse/text.h"

namespace kbparse {
namespace {

void AddEvidence(CandidateRule *c, Evidence e) {
  if (c->evidence.size() >= kMaxEvidence) return;
  if (std::find(c->evidence.begin(), c->evidence.end(), e) != c->evidence.end()) {
    return;
  }
  c->evidence.push_back(std::move(e));
}

Evidence Window(const LearnSubsentence &s, size_t start, size_t end) {
  return Evidence{s.Text(), start, end};
}

bool AcceptedFeaturesExist(const GrammarBase &gb,
                           const std::vector<Feature> &features) {
  for (const PhrasePattern &p : gb.phrase_patterns()) {
    if (p.status == PatternStatus::kAccepted && p.features == features) {
      return true;
    }
  }
  return false;
}

void SortBySupport(std::vector<CandidateRule> *out,
                   std::vector<std::string> *tie_keys) {
  std::vector<size_t> order(out->size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if ((*out)[a].support != (*out)[b].support) {
      return (*out)[a].support > (*out)[b].support;
    }
    return (*tie_keys)[a] < (*tie_keys)[b];
  });
  std::vector<CandidateRule> sorted;
  sorted.reserve(out->size());
  for (size_t i : order) sorted.push_back(std::move((*out)[i]));
  *out = std::move(sorted);
}

std::vector<std::string> Units(std::string_view surface, AffixUnit unit) {
  if (unit == AffixUnit::kChar) return Utf8Chars(surface);
  std::vector<std::string> tokens;
  for (std::string &t : Split(surface, ' ')) {
    if (!t.empty()) tokens.push_back(std::move(t));
  }
  return tokens;
}

// The |count| leading or trailing units of |units|, or "" when the surface
// is not longer than the affix.
std::string Affix(const std::vector<std::string> &units, AffixPosition position,
                  int count, AffixUnit unit) {
  const size_t n = static_cast<size_t>(count);
  if (units.size() <= n) return "";
  std::vector<std::string> part =
      position == AffixPosition::kPrefix
          ? std::vector<std::string>(units.begin(), units.begin() + n)
          : std::vector<std::string>(units.end() - n, units.end());
  return Join(part, unit == AffixUnit::kToken ? " " : "");
}

// Specificity order used by trigram generalization: a word is below any
// concept, and concepts are ordered by descent.
bool FeatureLeq(const KnowledgeBase &kb, const Feature &a, const Feature &b) {
  if (a == b) return true;
  if (a.kind == FeatureKind::kWord) return b.kind == FeatureKind::kConcept;
  if (b.kind == FeatureKind::kWord) return false;
  return kb.IsDescendant(a.concept_id, b.concept_id);
}

bool TripleLeq(const KnowledgeBase &kb, const std::vector<Feature> &a,
               const std::vector<Feature> &b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (!FeatureLeq(kb, a[i], b[i])) return false;
  }
  return true;
}

std::optional<std::string> WriteCandidate(KnowledgeBase &kb, GrammarBase &gb,
                                          const CandidateRule &c) {
  KnowledgeBase next_kb;
  GrammarBase next_gb = gb;
  const bool touches_kb = c.kind() == CandidateKind::kNewConcept ||
                          c.kind() == CandidateKind::kConceptFeature;
  if (touches_kb) next_kb = kb;
  const KnowledgeBase &view = touches_kb ? next_kb : kb;
  try {
    std::visit(
        [&](const auto &p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, ConceptRulePayload>) {
            ConceptRule rule;
            rule.concept_id = p.concept_id;
            rule.position = p.position;
            rule.unit = p.unit;
            rule.count = p.char_count;
            rule.affix = p.chars;
            next_gb.AddConceptRule(view, std::move(rule));
          } else if constexpr (std::is_same_v<T, NewConceptPayload>) {
            Concept record;
            record.name = p.surface;
            ObjectId id = next_kb.AddConcept(std::move(record));
            next_kb.LinkWord({p.surface, id, ObjectKind::kConcept, "NN"});
          } else if constexpr (std::is_same_v<T, ConceptFeaturePayload>) {
            Concept record;
            record.name = p.concept_name;
            ObjectId id = next_kb.AddConcept(std::move(record));
            for (const TaggedToken &m : p.members) {
              next_kb.LinkWord(
                  {m.w, id, ObjectKind::kConcept, m.pos == "UNK" ? "NN" : m.pos});
            }
            PhrasePattern pattern;
            if (p.side == Side::kBefore) {
              pattern.features = {Feature::Concept(id), Feature::Word(p.anchor)};
              pattern.core_word_index = 1;
            } else {
              pattern.features = {Feature::Word(p.anchor), Feature::Concept(id)};
              pattern.core_word_index = 0;
            }
            pattern.pos_tag = p.anchor_pos;
            next_gb.AddPhrasePattern(view, std::move(pattern));
          } else if constexpr (std::is_same_v<T, PhrasePatternPayload>) {
            PhrasePattern pattern = p.pattern;
            pattern.id = 0;
            pattern.status = PatternStatus::kAccepted;
            next_gb.AddPhrasePattern(view, std::move(pattern));
          } else {
            if (p.pattern.meaning.empty()) {
              throw Error(ErrorCode::kValidation,
                          "subsentence pattern needs a meaning to be accepted");
            }
            SubsentencePattern pattern = p.pattern;
            pattern.status = PatternStatus::kAccepted;
            next_gb.AddSubsentencePattern(std::move(pattern));
          }
        },
        c.payload);
  } catch (const Error &e) {
    return std::string(e.what());
  }
  if (touches_kb) kb = std::move(next_kb);
  gb = std::move(next_gb);
  return std::nullopt;
}

}  // namespace

std::string LearnSubsentence::Text() const {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += joiner;
    out += tokens[i].value;
  }
  return out;
}

LearnSubsentence ToLearnSubsentence(const KnowledgeBase &kb,
                                    const SubsentenceParse &parse,
                                    std::string_view joiner) {
  LearnSubsentence s;
  s.joiner = std::string(joiner);
  s.parse_str = parse.parse_str;
  s.parsed = parse.status == ParseStatus::kParsed;
  for (const Element &e : parse.elements) {
    LearnToken t;
    t.value = e.value;
    t.core = CoreWord(e);
    t.pos = e.pos;
    for (const ObjectRef &ref : LexiconWord(kb, t.core).links) {
      if (ref.kind == ObjectKind::kConcept) t.concepts.push_back(ref.id);
    }
    s.tokens.push_back(std::move(t));
  }
  return s;
}

std::vector<CandidateRule> DiscoverConceptRules(const KnowledgeBase &kb,
                                                const GrammarBase &gb,
                                                const LearnerConfig &config) {
  std::map<ObjectId, std::set<std::string>> surfaces_of;
  for (const auto &[surface, links] : kb.words()) {
    for (const WordLink &link : links) {
      if (link.object_kind == ObjectKind::kConcept) {
        surfaces_of[link.object_id].insert(surface);
      }
    }
  }

  std::vector<CandidateRule> out;
  const AffixUnit unit = config.concept_rule_unit;
  for (const auto &[id, record] : kb.concepts()) {
    std::set<std::string> members;
    for (ObjectId child : kb.Children(id)) {
      if (child == id) continue;
      auto it = surfaces_of.find(child);
      if (it != surfaces_of.end()) members.insert(it->second.begin(), it->second.end());
    }
    if (members.size() < config.min_members) continue;

    for (AffixPosition position : {AffixPosition::kPrefix, AffixPosition::kSuffix}) {
      for (int count = 1; count <= 2; ++count) {
        std::map<std::string, std::vector<std::string>> by_affix;
        for (const std::string &m : members) {
          std::string affix = Affix(Units(m, unit), position, count, unit);
          if (!affix.empty()) by_affix[affix].push_back(m);
        }
        if (by_affix.empty()) continue;
        auto best = by_affix.begin();
        for (auto it = by_affix.begin(); it != by_affix.end(); ++it) {
          if (it->second.size() > best->second.size()) best = it;
        }
        const std::string &affix = best->first;
        double coverage = static_cast<double>(best->second.size()) /
                          static_cast<double>(members.size());

        size_t matching = 0;
        size_t belonging = 0;
        for (const auto &[surface, links] : kb.words()) {
          if (Affix(Units(surface, unit), position, count, unit) != affix) continue;
          ++matching;
          for (const WordLink &link : links) {
            if (link.object_kind == ObjectKind::kConcept &&
                kb.IsDescendant(link.object_id, id)) {
              ++belonging;
              break;
            }
          }
        }
        double precision = matching == 0 ? 0.0
                                         : static_cast<double>(belonging) /
                                               static_cast<double>(matching);
        if (coverage < config.min_coverage || precision < config.min_precision) {
          continue;
        }

        ConceptRule existing{id, position, unit, count, affix, "NN"};
        if (std::find(gb.concept_rules().begin(), gb.concept_rules().end(),
                      existing) != gb.concept_rules().end()) {
          continue;
        }

        CandidateRule c;
        ConceptRulePayload p;
        p.position = position;
        p.unit = unit;
        p.char_count = count;
        p.chars = affix;
        p.concept_id = id;
        p.coverage_ratio = coverage;
        p.precision_ratio = precision;
        c.payload = p;
        c.support = best->second.size();
        c.confidence = precision;
        for (const std::string &m : best->second) AddEvidence(&c, Evidence{m, {}, {}});
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

std::vector<CandidateRule> DiscoverNewConcepts(
    const KnowledgeBase &kb, const std::vector<LearnSubsentence> &corpus,
    const LearnerConfig &config) {
  std::map<std::string, size_t> unigrams;
  struct Gram {
    std::string joiner;
    CandidateRule rule;
  };
  std::map<std::vector<std::string>, Gram> grams;

  for (size_t s = 0; s < corpus.size(); ++s) {
    const LearnSubsentence &sub = corpus[s];
    if (sub.parsed) continue;
    const auto &tokens = sub.tokens;
    for (const LearnToken &t : tokens) ++unigrams[t.value];
    for (size_t n = 2; n <= config.max_ngram; ++n) {
      for (size_t i = 0; i + n <= tokens.size(); ++i) {
        std::vector<std::string> words;
        for (size_t k = i; k < i + n; ++k) words.push_back(tokens[k].value);
        auto [it, inserted] = grams.try_emplace(std::move(words));
        Gram &g = it->second;
        if (inserted) g.joiner = sub.joiner;
        ++g.rule.support;
        g.rule.sources.insert(s);
        AddEvidence(&g.rule, Window(sub, i, i + n));
      }
    }
  }

  std::vector<CandidateRule> out;
  std::vector<std::string> keys;
  for (auto &[words, g] : grams) {
    if (g.rule.support < config.min_freq) continue;
    std::string surface = Join(words, g.joiner);
    if (kb.HasSurface(surface)) continue;
    size_t max_unigram = 0;
    for (const std::string &w : words) max_unigram = std::max(max_unigram, unigrams[w]);
    double cohesion = static_cast<double>(g.rule.support) /
                      static_cast<double>(max_unigram);
    if (cohesion < config.cohesion) continue;
    NewConceptPayload p;
    p.surface = surface;
    p.words = words;
    p.cohesion = cohesion;
    g.rule.payload = std::move(p);
    g.rule.confidence = cohesion;
    keys.push_back(surface);
    out.push_back(std::move(g.rule));
  }
  SortBySupport(&out, &keys);
  return out;
}

std::vector<CandidateRule> DiscoverConceptFeatures(
    const std::vector<LearnSubsentence> &corpus, const LearnerConfig &config) {
  std::map<std::string, size_t> counts;
  for (const LearnSubsentence &sub : corpus) {
    if (sub.parsed) continue;
    for (const LearnToken &t : sub.tokens) ++counts[t.core];
  }

  struct SideStats {
    std::string anchor_pos;
    std::map<std::string, std::string> members;  // surface -> first pos
    CandidateRule rule;
  };
  std::map<std::pair<std::string, Side>, SideStats> stats;
  for (size_t s = 0; s < corpus.size(); ++s) {
    const LearnSubsentence &sub = corpus[s];
    if (sub.parsed) continue;
    const auto &tokens = sub.tokens;
    for (size_t i = 0; i < tokens.size(); ++i) {
      if (counts[tokens[i].core] < config.min_freq) continue;
      for (Side side : {Side::kBefore, Side::kAfter}) {
        if (side == Side::kBefore && i == 0) continue;
        if (side == Side::kAfter && i + 1 >= tokens.size()) continue;
        size_t j = side == Side::kBefore ? i - 1 : i + 1;
        SideStats &st = stats[{tokens[i].core, side}];
        if (st.rule.support == 0) st.anchor_pos = tokens[i].pos;
        st.members.try_emplace(tokens[j].core, tokens[j].pos);
        ++st.rule.support;
        st.rule.sources.insert(s);
        AddEvidence(&st.rule, Window(sub, std::min(i, j), std::max(i, j) + 1));
      }
    }
  }

  std::vector<CandidateRule> out;
  for (auto &[key, st] : stats) {
    if (st.members.size() < 2 || st.rule.support < config.min_freq) continue;
    ConceptFeaturePayload p;
    p.anchor = key.first;
    p.anchor_pos = st.anchor_pos;
    p.side = key.second;
    for (const auto &[w, pos] : st.members) p.members.push_back({w, pos});
    p.concept_name = key.first + "-" + std::string(SideName(key.second));
    st.rule.payload = std::move(p);
    out.push_back(std::move(st.rule));
  }
  return out;
}

std::vector<CandidateRule> DiscoverTrigramPatterns(
    const KnowledgeBase &kb, const GrammarBase &gb,
    const std::vector<LearnSubsentence> &corpus, const LearnerConfig &config) {
  struct Triple {
    std::vector<Feature> features;
    std::vector<size_t> windows;
    CandidateRule rule;
  };
  std::map<std::string, Triple> triples;
  size_t window_id = 0;

  for (size_t s = 0; s < corpus.size(); ++s) {
    const LearnSubsentence &sub = corpus[s];
    const auto &tokens = sub.tokens;
    for (size_t i = 0; i + 3 <= tokens.size(); ++i) {
      if (tokens[i].pos != "NN" || tokens[i + 1].pos != "NN" ||
          tokens[i + 2].pos != "NN") {
        continue;
      }
      std::vector<std::vector<Feature>> options(3);
      for (size_t k = 0; k < 3; ++k) {
        const LearnToken &t = tokens[i + k];
        options[k].push_back(Feature::Word(t.core));
        std::set<ObjectId> concepts;
        for (ObjectId c : t.concepts) {
          concepts.insert(c);
          for (const auto &[ancestor, depth] :
               kb.AncestorsWithin(c, config.generalization_levels)) {
            concepts.insert(ancestor);
          }
        }
        for (ObjectId c : concepts) options[k].push_back(Feature::Concept(c));
      }
      const size_t id = window_id++;
      for (const Feature &a : options[0]) {
        for (const Feature &b : options[1]) {
          for (const Feature &c : options[2]) {
            std::vector<Feature> features = {a, b, c};
            std::string key = FeaturesToString(features);
            Triple &t = triples[key];
            if (t.windows.empty()) t.features = std::move(features);
            t.windows.push_back(id);
            t.rule.sources.insert(s);
            AddEvidence(&t.rule, Window(sub, i, i + 3));
          }
        }
      }
    }
  }

  std::map<std::vector<size_t>, std::vector<Triple *>> groups;
  for (auto &[key, t] : triples) {
    if (t.windows.size() < config.min_freq) continue;
    groups[t.windows].push_back(&t);
  }

  std::vector<CandidateRule> out;
  std::vector<std::string> keys;
  for (auto &[windows, members] : groups) {
    for (Triple *t : members) {
      bool dominated = false;
      for (Triple *u : members) {
        if (u == t) continue;
        if (TripleLeq(kb, u->features, t->features) &&
            !TripleLeq(kb, t->features, u->features)) {
          dominated = true;
          break;
        }
      }
      if (dominated || AcceptedFeaturesExist(gb, t->features)) continue;
      PhrasePatternPayload p;
      p.pattern.features = t->features;
      p.pattern.core_word_index = 2;
      p.pattern.pos_tag = "NN";
      p.pattern.status = PatternStatus::kCandidate;
      p.method = "trigram";
      t->rule.payload = std::move(p);
      t->rule.support = windows.size();
      keys.push_back(FeaturesToString(t->features));
      out.push_back(std::move(t->rule));
    }
  }
  SortBySupport(&out, &keys);
  return out;
}

std::vector<CandidateRule> DiscoverCooccurPatterns(
    const GrammarBase &gb, const std::vector<LearnSubsentence> &corpus,
    const LearnerConfig &config) {
  std::map<std::string, size_t> counts;
  for (const LearnSubsentence &sub : corpus) {
    if (sub.parsed) continue;
    for (const LearnToken &t : sub.tokens) ++counts[t.core];
  }

  struct Order {
    size_t count = 0;
    std::string right_pos;
    CandidateRule rule;
  };
  struct Pair {
    // [0]: lexicographically smaller word on the left.
    Order orders[2];
    int first = -1;
  };
  std::map<std::pair<std::string, std::string>, Pair> pairs;
  for (size_t s = 0; s < corpus.size(); ++s) {
    const LearnSubsentence &sub = corpus[s];
    if (sub.parsed) continue;
    const auto &tokens = sub.tokens;
    for (size_t i = 0; i < tokens.size(); ++i) {
      for (size_t j = i + 1; j < tokens.size() && j - i <= config.window; ++j) {
        const std::string &left = tokens[i].core;
        const std::string &right = tokens[j].core;
        if (counts[left] < config.min_freq && counts[right] < config.min_freq) {
          continue;
        }
        const bool swapped = right < left;
        Pair &pair = pairs[swapped ? std::make_pair(right, left)
                                   : std::make_pair(left, right)];
        const int o = swapped ? 1 : 0;
        if (pair.first < 0) pair.first = o;
        Order &order = pair.orders[o];
        if (order.count == 0) order.right_pos = tokens[j].pos;
        ++order.count;
        order.rule.sources.insert(s);
        AddEvidence(&order.rule, Window(sub, i, j + 1));
      }
    }
  }

  std::vector<CandidateRule> out;
  std::vector<std::string> keys;
  for (auto &[words, pair] : pairs) {
    const size_t total = pair.orders[0].count + pair.orders[1].count;
    if (total < config.min_freq) continue;
    int o = pair.first;
    if (pair.orders[0].count != pair.orders[1].count) {
      o = pair.orders[0].count > pair.orders[1].count ? 0 : 1;
    }
    Order &order = pair.orders[o];
    const std::string &left = o == 0 ? words.first : words.second;
    const std::string &right = o == 0 ? words.second : words.first;
    std::vector<Feature> features = {Feature::Word(left), Feature::Word(right)};
    if (AcceptedFeaturesExist(gb, features)) continue;

    CandidateRule c = std::move(order.rule);
    const Order &other = pair.orders[1 - o];
    c.sources.insert(other.rule.sources.begin(), other.rule.sources.end());
    for (const Evidence &e : other.rule.evidence) AddEvidence(&c, e);
    PhrasePatternPayload p;
    p.pattern.features = std::move(features);
    p.pattern.core_word_index = 1;
    p.pattern.pos_tag = order.right_pos;
    p.pattern.status = PatternStatus::kCandidate;
    p.method = "cooccur";
    keys.push_back(FeaturesToString(p.pattern.features));
    c.payload = std::move(p);
    c.support = total;
    c.confidence = static_cast<double>(order.count) / static_cast<double>(total);
    out.push_back(std::move(c));
  }
  SortBySupport(&out, &keys);
  return out;
}

std::vector<CandidateRule> DiscoverSubsentencePatterns(
    const GrammarBase &gb, const std::vector<LearnSubsentence> &corpus,
    const LearnerConfig &config) {
  std::map<std::string, CandidateRule> groups;
  for (size_t s = 0; s < corpus.size(); ++s) {
    const LearnSubsentence &sub = corpus[s];
    if (sub.parsed || sub.tokens.empty()) continue;
    CandidateRule &c = groups[sub.parse_str];
    ++c.support;
    c.sources.insert(s);
    AddEvidence(&c, Window(sub, 0, sub.tokens.size()));
  }

  std::vector<CandidateRule> out;
  std::vector<std::string> keys;
  for (auto &[parse_str, c] : groups) {
    if (c.support < config.min_freq) continue;
    if (gb.FindSubsentencePattern(parse_str) != nullptr) continue;
    SubsentencePatternPayload p;
    p.pattern.parse_str = parse_str;
    const std::vector<std::string> tags = Split(parse_str, '|');
    p.pattern.ss_type =
        tags.size() == 1 ? SubsentenceType::kPhrase : SubsentenceType::kSentence;
    p.pattern.ss_type2 = std::find(tags.begin(), tags.end(), "QA") != tags.end()
                             ? SpeechAct::kInterrogative
                             : SpeechAct::kDeclarative;
    p.pattern.status = PatternStatus::kCandidate;
    c.payload = std::move(p);
    keys.push_back(parse_str);
    out.push_back(std::move(c));
  }
  SortBySupport(&out, &keys);
  return out;
}

std::vector<CandidateRule> DiscoverAll(const KnowledgeBase &kb,
                                       const GrammarBase &gb,
                                       const std::vector<LearnSubsentence> &corpus,
                                       const LearnerConfig &config) {
  std::vector<CandidateRule> out;
  auto append = [&out](std::vector<CandidateRule> part) {
    for (CandidateRule &c : part) out.push_back(std::move(c));
  };
  if (config.Enabled(CandidateKind::kConceptRule)) {
    append(DiscoverConceptRules(kb, gb, config));
  }
  if (config.Enabled(CandidateKind::kNewConcept)) {
    append(DiscoverNewConcepts(kb, corpus, config));
  }
  if (config.Enabled(CandidateKind::kConceptFeature)) {
    append(DiscoverConceptFeatures(corpus, config));
  }
  if (config.Enabled(CandidateKind::kPhrasePattern)) {
    append(DiscoverTrigramPatterns(kb, gb, corpus, config));
    append(DiscoverCooccurPatterns(gb, corpus, config));
  }
  if (config.Enabled(CandidateKind::kSubsentencePattern)) {
    append(DiscoverSubsentencePatterns(gb, corpus, config));
  }
  return out;
}

std::optional<std::string> ApplyDecision(KnowledgeBase &kb, GrammarBase &gb,
                                         CandidateRule &candidate,
                                         const Decision &decision) {
  if (candidate.status != CandidateStatus::kPending) {
    throw Error(ErrorCode::kValidation,
                "candidate " + std::to_string(candidate.id) + " is already " +
                    std::string(CandidateStatusName(candidate.status)));
  }
  if (decision.meaning) {
    auto *sub = std::get_if<SubsentencePatternPayload>(&candidate.payload);
    if (sub == nullptr) {
      throw Error(ErrorCode::kValidation,
                  "meaning applies to subsentence_pattern candidates only");
    }
    sub->pattern.meaning = ParseMeaningString(*decision.meaning);
  }
  if (!decision.accept) {
    candidate.status = CandidateStatus::kRejected;
    candidate.error_note.reset();
    return std::nullopt;
  }
  std::optional<std::string> note = WriteCandidate(kb, gb, candidate);
  if (note) {
    candidate.error_note = note;
    return note;
  }
  candidate.status = CandidateStatus::kAccepted;
  candidate.applied = true;
  candidate.error_note.reset();
  return std::nullopt;
}

std::optional<std::string> ApplyAccepted(KnowledgeBase &kb, GrammarBase &gb,
                                         CandidateRule &candidate) {
  if (candidate.status != CandidateStatus::kAccepted || candidate.applied) {
    return std::nullopt;
  }
  std::optional<std::string> note = WriteCandidate(kb, gb, candidate);
  if (note) {
    candidate.status = CandidateStatus::kPending;
    candidate.error_note = note;
    return note;
  }
  candidate.applied = true;
  candidate.error_note.reset();
  return std::nullopt;
}

}  // namespace kbparse
