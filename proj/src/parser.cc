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

#include "kbparse/parser.h"

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

#include "kbparse/error.h"
#include "kbparse/text.h"

namespace kbparse {
namespace {

std::vector<Element> ToElements(const std::vector<Word> &words) {
  std::vector<Element> elements;
  elements.reserve(words.size());
  for (const Word &w : words) elements.push_back(Element::FromWord(w));
  return elements;
}

std::vector<Element> Replace(const std::vector<Element> &elements,
                             size_t start, size_t length, Element phrase) {
  std::vector<Element> out;
  out.reserve(elements.size() - length + 1);
  out.insert(out.end(), elements.begin(), elements.begin() + start);
  out.push_back(std::move(phrase));
  out.insert(out.end(), elements.begin() + start + length, elements.end());
  return out;
}

std::vector<ObjectId> LinksOfKind(const std::vector<ObjectRef> &links,
                                  ObjectKind kind) {
  std::vector<ObjectId> ids;
  for (const ObjectRef &ref : links) {
    if (ref.kind == kind) ids.push_back(ref.id);
  }
  return ids;
}

// A relation conflicts when both sides resolve in the knowledge base and no
// reading of them is compatible: the subject concept cannot perform the
// verb's method, or the method cannot act on the object concept.
bool HasKbConflict(const KnowledgeBase &kb, const SubsentenceParse &parse) {
  for (const ExtractedRelation &rel : parse.relations) {
    const Element &head = parse.elements[rel.head_index];
    const Element &tail = parse.elements[rel.tail_index];
    bool compatible = false;
    if (rel.type == RelationType::kNsubj) {
      auto concepts = LinksOfKind(CoreLinks(kb, head), ObjectKind::kConcept);
      auto methods = LinksOfKind(CoreLinks(kb, tail), ObjectKind::kMethod);
      if (concepts.empty() || methods.empty()) continue;
      for (ObjectId c : concepts) {
        std::set<ObjectId> available = kb.ConceptMethods(c);
        for (ObjectId m : methods) {
          if (available.count(m)) compatible = true;
        }
      }
    } else {
      auto methods = LinksOfKind(CoreLinks(kb, head), ObjectKind::kMethod);
      auto concepts = LinksOfKind(CoreLinks(kb, tail), ObjectKind::kConcept);
      if (concepts.empty() || methods.empty()) continue;
      for (ObjectId m : methods) {
        for (ObjectId c : concepts) {
          if (kb.MethodApplicable(m, c)) compatible = true;
        }
      }
    }
    if (!compatible) return true;
  }
  return false;
}

class ExhaustiveSearch {
 public:
  ExhaustiveSearch(const KnowledgeBase &kb, const GrammarBase &gb,
                   std::string_view joiner, const ExhaustiveLimits &limits)
      : kb_(kb), gb_(gb), joiner_(joiner), limits_(limits) {}

  void Visit(const std::vector<Element> &state) {
    if (!visited_.insert(DerivationSignature(state)).second) return;
    if (visited_.size() > limits_.max_states) {
      throw Error(ErrorCode::kResource,
                  "exhaustive parse visited more than " +
                      std::to_string(limits_.max_states) + " states");
    }
    bool expanded = false;
    for (const PhrasePattern &p : gb_.phrase_patterns()) {
      if (p.status != PatternStatus::kAccepted) continue;
      size_t k = p.features.size();
      if (k > state.size()) continue;
      for (size_t start = 0; start + k <= state.size(); ++start) {
        std::optional<Element> phrase =
            MatchPhrasePattern(kb_, p, state, start, joiner_);
        if (!phrase) continue;
        expanded = true;
        Visit(Replace(state, start, k, std::move(*phrase)));
      }
    }
    if (!expanded) {
      terminals_.push_back(state);
      if (terminals_.size() > limits_.max_derivations) {
        throw Error(ErrorCode::kResource,
                    "exhaustive parse produced more than " +
                        std::to_string(limits_.max_derivations) +
                        " derivations");
      }
    }
  }

  std::vector<std::vector<Element>> &terminals() { return terminals_; }

 private:
  const KnowledgeBase &kb_;
  const GrammarBase &gb_;
  std::string joiner_;
  ExhaustiveLimits limits_;
  std::unordered_set<std::string> visited_;
  std::vector<std::vector<Element>> terminals_;
};

}  // namespace

bool MatchFeature(const KnowledgeBase &kb, const Feature &feature,
                  const Element &element) {
  switch (feature.kind) {
    case FeatureKind::kWord:
      return feature.value == CoreWord(element);
    case FeatureKind::kPos:
      return feature.value == element.pos;
    case FeatureKind::kConcept:
      for (const ObjectRef &ref : CoreLinks(kb, element)) {
        if (ref.kind == ObjectKind::kConcept &&
            kb.IsDescendant(ref.id, feature.concept_id)) {
          return true;
        }
      }
      return false;
  }
  return false;
}

std::optional<Element> MatchPhrasePattern(const KnowledgeBase &kb,
                                          const PhrasePattern &pattern,
                                          const std::vector<Element> &elements,
                                          size_t start,
                                          std::string_view joiner) {
  const size_t k = pattern.features.size();
  if (start > elements.size() || k > elements.size() - start) {
    throw std::out_of_range("pattern window exceeds element list");
  }
  for (size_t i = 0; i < k; ++i) {
    if (!MatchFeature(kb, pattern.features[i], elements[start + i])) {
      return std::nullopt;
    }
  }
  std::vector<Element> children(elements.begin() + start,
                                elements.begin() + start + k);
  return Element::MakePhrase(pattern, std::move(children), joiner);
}

std::pair<std::string, const SubsentencePattern *> ClassifySubsentence(
    const GrammarBase &gb, const std::vector<Element> &elements) {
  std::string parse_str = ParseString(elements);
  const SubsentencePattern *pattern = gb.FindSubsentencePattern(parse_str);
  return {std::move(parse_str), pattern};
}

std::vector<ExtractedRelation> ExtractRelations(
    const std::vector<Element> &elements, const SubsentencePattern &pattern) {
  std::vector<ExtractedRelation> relations;
  for (const RelationSpec &spec : pattern.meaning) {
    if (spec.head_index >= elements.size() ||
        spec.tail_index >= elements.size()) {
      throw Error(ErrorCode::kIntegrity,
                  "relation " + SerializeMeaning({spec}) +
                      " out of range for " + std::to_string(elements.size()) +
                      " elements");
    }
    relations.push_back({spec.type, CoreWord(elements[spec.head_index]),
                         CoreWord(elements[spec.tail_index]), spec.head_index,
                         spec.tail_index});
  }
  return relations;
}

SubsentenceParse FinishParse(const KnowledgeBase &kb, const GrammarBase &gb,
                             std::vector<Element> elements) {
  SubsentenceParse parse;
  auto [parse_str, pattern] = ClassifySubsentence(gb, elements);
  parse.parse_str = std::move(parse_str);
  parse.elements = std::move(elements);
  parse.text = Join(LeafValues(parse.elements), " ");
  if (pattern != nullptr) {
    parse.matched_pattern = *pattern;
    parse.status = ParseStatus::kParsed;
    parse.relations = ExtractRelations(parse.elements, *pattern);
    parse.unresolved_inheritance =
        pattern->ss_type == SubsentenceType::kHalfSentence;
    parse.kb_conflict = HasKbConflict(kb, parse);
  }
  return parse;
}

SubsentenceParse SingleRecursionParse(const KnowledgeBase &kb,
                                      const GrammarBase &gb,
                                      const std::vector<Word> &words,
                                      std::string_view joiner) {
  std::vector<Element> elements = ToElements(words);
  bool merged = true;
  while (merged) {
    merged = false;
    for (const PhrasePattern &p : gb.phrase_patterns()) {
      if (p.status != PatternStatus::kAccepted) continue;
      const size_t k = p.features.size();
      if (k > elements.size()) continue;
      for (size_t start = 0; start + k <= elements.size(); ++start) {
        std::optional<Element> phrase =
            MatchPhrasePattern(kb, p, elements, start, joiner);
        if (!phrase) continue;
        elements = Replace(elements, start, k, std::move(*phrase));
        merged = true;
        break;
      }
      if (merged) break;
    }
  }
  return FinishParse(kb, gb, std::move(elements));
}

std::vector<SubsentenceParse> ExhaustiveParse(const KnowledgeBase &kb,
                                              const GrammarBase &gb,
                                              const std::vector<Word> &words,
                                              std::string_view joiner,
                                              const ExhaustiveLimits &limits) {
  if (words.size() > limits.max_elements) {
    throw Error(ErrorCode::kResource,
                std::to_string(words.size()) + " words exceed max_elements " +
                    std::to_string(limits.max_elements));
  }
  ExhaustiveSearch search(kb, gb, joiner, limits);
  search.Visit(ToElements(words));

  std::vector<SubsentenceParse> results;
  std::vector<std::string> signatures;
  for (std::vector<Element> &state : search.terminals()) {
    signatures.push_back(DerivationSignature(state));
    results.push_back(FinishParse(kb, gb, std::move(state)));
  }

  std::vector<size_t> order(results.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto rank = [&](size_t i) {
    const SubsentenceParse &p = results[i];
    int tier = p.status != ParseStatus::kParsed ? 2 : (p.kb_conflict ? 1 : 0);
    return std::make_tuple(tier, p.elements.size(), std::cref(p.parse_str),
                           std::cref(signatures[i]));
  };
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return rank(a) < rank(b); });
  std::vector<SubsentenceParse> sorted;
  sorted.reserve(results.size());
  for (size_t i : order) sorted.push_back(std::move(results[i]));
  return sorted;
}

SentenceParser::SentenceParser(const KnowledgeBase &kb, const GrammarBase &gb,
                               ParseOptions options)
    : kb_(kb),
      gb_(gb),
      options_(std::move(options)),
      segmenter_(kb, gb.concept_rules()) {}

SubsentenceParse SentenceParser::ParseWords(const std::vector<Word> &words,
                                            std::string_view joiner,
                                            size_t *fallbacks) const {
  if (options_.mode == ParseMode::kExhaustive) {
    try {
      std::vector<SubsentenceParse> all =
          ExhaustiveParse(kb_, gb_, words, joiner, options_.limits);
      return std::move(all.front());
    } catch (const Error &e) {
      if (e.code() != ErrorCode::kResource) throw;
      ++*fallbacks;
    }
  }
  return SingleRecursionParse(kb_, gb_, words, joiner);
}

void SentenceParser::Aggregate(SentenceParse *parse) {
  size_t parsed = 0;
  for (const SubsentenceParse &s : parse->subsentences) {
    if (s.status == ParseStatus::kParsed) ++parsed;
  }
  parse->coverage = parse->subsentences.empty()
                        ? 0.0
                        : static_cast<double>(parsed) /
                              static_cast<double>(parse->subsentences.size());
}

SentenceParse SentenceParser::Parse(std::string_view text) const {
  CorpusRecord record;
  record.text = std::string(text);
  return Parse(record);
}

SentenceParse SentenceParser::Parse(const CorpusRecord &record) const {
  SentenceParse result;
  result.text = record.text;
  const std::string joiner(JoinerFor(record.text));
  if (record.tokens) {
    for (const auto &group :
         SplitTaggedSubsentences(*record.tokens, options_.delimiters)) {
      std::vector<Word> words = LoadPretagged(kb_, group);
      SubsentenceParse sub = ParseWords(words, joiner, &result.fallbacks);
      std::vector<std::string> surfaces;
      for (const TaggedToken &t : group) surfaces.push_back(t.w);
      sub.text = Join(surfaces, joiner);
      result.subsentences.push_back(std::move(sub));
    }
  } else {
    for (const SubsentenceText &piece :
         SplitSubsentences(record.text, options_.delimiters)) {
      std::vector<Word> words = segmenter_.Segment(piece.text);
      if (words.empty()) continue;
      SubsentenceParse sub = ParseWords(words, joiner, &result.fallbacks);
      sub.text = piece.text;
      result.subsentences.push_back(std::move(sub));
    }
  }
  Aggregate(&result);
  return result;
}

}  // namespace kbparse
