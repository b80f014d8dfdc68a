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

#include "kbparse/segmenter.h"

#include <algorithm>

#include "json.hpp"
#include "kbparse/error.h"
#include "kbparse/pos_tags.h"
#include "kbparse/text.h"

namespace kbparse {
namespace {

bool IsDelimiter(const std::string &ch, const std::vector<std::string> &set) {
  return std::find(set.begin(), set.end(), ch) != set.end();
}

std::vector<std::string> SpaceTokens(std::string_view text) {
  std::vector<std::string> tokens;
  for (std::string &piece : Split(text, ' ')) {
    if (!piece.empty()) tokens.push_back(std::move(piece));
  }
  return tokens;
}

std::string JoinRange(const std::vector<std::string> &parts, size_t begin,
                      size_t end, std::string_view sep) {
  std::string out;
  for (size_t i = begin; i < end; ++i) {
    if (i > begin) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

std::vector<SubsentenceText> SplitSubsentences(std::string_view text,
                                               std::string_view delimiters) {
  const std::vector<std::string> delims = Utf8Chars(delimiters);
  std::vector<SubsentenceText> pieces;
  std::string current;
  auto flush = [&](std::optional<std::string> delimiter) {
    std::string trimmed(Trim(current));
    current.clear();
    if (trimmed.empty()) return;
    pieces.push_back({std::move(trimmed), std::move(delimiter)});
  };
  for (std::string &ch : Utf8Chars(text)) {
    if (IsDelimiter(ch, delims)) {
      flush(ch);
    } else {
      current += ch;
    }
  }
  flush(std::nullopt);
  return pieces;
}

std::string_view JoinerFor(std::string_view text) {
  return text.find(' ') != std::string_view::npos ? " " : "";
}

Segmenter::Segmenter(const KnowledgeBase &kb,
                     const std::vector<ConceptRule> &rules)
    : kb_(kb), rules_(rules) {
  for (const auto &[surface, links] : kb.words()) {
    max_surface_chars_ = std::max(max_surface_chars_, Utf8Chars(surface).size());
    max_surface_tokens_ =
        std::max(max_surface_tokens_, SpaceTokens(surface).size());
  }
}

Word LexiconWord(const KnowledgeBase &kb, std::string_view surface) {
  Word word;
  word.value = std::string(surface);
  for (const WordLink &link : kb.LookupWord(surface)) {
    ObjectRef ref{link.object_kind, link.object_id};
    if (word.links.empty()) word.pos = link.pos;
    if (std::find(word.links.begin(), word.links.end(), ref) == word.links.end()) {
      word.links.push_back(ref);
    }
  }
  if (word.pos.empty()) word.pos = std::string(kUnknownTag);
  return word;
}

Word Segmenter::MakeWord(std::string_view surface) const {
  return LexiconWord(kb_, surface);
}

std::vector<Word> Segmenter::Segment(std::string_view text) const {
  if (text.find(' ') != std::string_view::npos) return SegmentSpaced(text);
  return SegmentUnspaced(text);
}

std::vector<Word> Segmenter::SegmentSpaced(std::string_view text) const {
  const std::vector<std::string> tokens = SpaceTokens(text);
  std::vector<Word> words;
  size_t i = 0;
  while (i < tokens.size()) {
    size_t longest = std::min(max_surface_tokens_, tokens.size() - i);
    bool matched = false;
    for (size_t len = longest; len >= 1; --len) {
      std::string candidate = JoinRange(tokens, i, i + len, " ");
      if (kb_.HasSurface(candidate)) {
        words.push_back(MakeWord(candidate));
        i += len;
        matched = true;
        break;
      }
    }
    if (matched) continue;
    Word word;
    size_t consumed = MatchRules(tokens, i, &word);
    if (consumed > 0) {
      words.push_back(std::move(word));
      i += consumed;
      continue;
    }
    words.push_back(MakeWord(tokens[i]));
    ++i;
  }
  return words;
}

std::vector<Word> Segmenter::SegmentUnspaced(std::string_view text) const {
  const std::vector<std::string> chars = Utf8Chars(text);
  std::vector<Word> words;
  size_t i = 0;
  while (i < chars.size()) {
    size_t longest = std::min(max_surface_chars_, chars.size() - i);
    bool matched = false;
    for (size_t len = longest; len >= 1; --len) {
      std::string candidate = JoinRange(chars, i, i + len, "");
      if (kb_.HasSurface(candidate)) {
        words.push_back(MakeWord(candidate));
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched) {
      words.push_back(MakeWord(chars[i]));
      ++i;
    }
  }
  return words;
}

size_t Segmenter::MatchRules(const std::vector<std::string> &tokens, size_t i,
                             Word *word) const {
  // Longest span first: token-unit rules cover the unknown token plus the
  // affix tokens, char-unit rules cover the single unknown token.
  size_t best = 0;
  std::vector<const ConceptRule *> hits;
  for (const ConceptRule &rule : rules_) {
    size_t span = 0;
    if (rule.unit == AffixUnit::kToken) {
      const std::vector<std::string> affix = SpaceTokens(rule.affix);
      size_t n = affix.size();
      if (i + n + 1 > tokens.size()) continue;
      bool ok;
      if (rule.position == AffixPosition::kPrefix) {
        ok = std::equal(affix.begin(), affix.end(), tokens.begin() + i) &&
             !kb_.HasSurface(tokens[i + n]);
      } else {
        ok = !kb_.HasSurface(tokens[i]) &&
             std::equal(affix.begin(), affix.end(), tokens.begin() + i + 1);
      }
      if (ok) span = n + 1;
    } else {
      const std::string &token = tokens[i];
      if (kb_.HasSurface(token) || token.size() <= rule.affix.size()) continue;
      bool ok = rule.position == AffixPosition::kPrefix
                    ? token.compare(0, rule.affix.size(), rule.affix) == 0
                    : token.compare(token.size() - rule.affix.size(),
                                    rule.affix.size(), rule.affix) == 0;
      if (ok) span = 1;
    }
    if (span == 0) continue;
    if (span > best) {
      best = span;
      hits.clear();
    }
    if (span == best) hits.push_back(&rule);
  }
  if (best == 0) return 0;

  word->value = JoinRange(tokens, i, i + best, " ");
  word->pos = hits.front()->pos;
  word->links.clear();
  for (const ConceptRule *rule : hits) {
    ObjectRef ref{ObjectKind::kConcept, rule->concept_id};
    if (std::find(word->links.begin(), word->links.end(), ref) == word->links.end()) {
      word->links.push_back(ref);
    }
  }
  std::sort(word->links.begin(), word->links.end());
  return best;
}

std::vector<Word> Segment(const KnowledgeBase &kb, std::string_view text) {
  static const std::vector<ConceptRule> kNoRules;
  return Segmenter(kb, kNoRules).Segment(text);
}

CorpusRecord ParseCorpusLine(std::string_view line) {
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kFormat, std::string("invalid JSON: ") + e.what());
  }
  if (!json.is_object() || !json.contains("text") || !json["text"].is_string()) {
    throw Error(ErrorCode::kFormat, "record needs a string \"text\" field");
  }
  CorpusRecord record;
  record.text = json["text"].get<std::string>();
  if (json.contains("tokens")) {
    const auto &tokens = json["tokens"];
    if (!tokens.is_array()) {
      throw Error(ErrorCode::kFormat, "\"tokens\" must be an array");
    }
    record.tokens.emplace();
    for (const auto &token : tokens) {
      if (!token.is_object() || !token.contains("w") || !token["w"].is_string() ||
          !token.contains("pos") || !token["pos"].is_string()) {
        throw Error(ErrorCode::kFormat,
                    "each token needs string \"w\" and \"pos\" fields");
      }
      record.tokens->push_back(
          {token["w"].get<std::string>(), token["pos"].get<std::string>()});
    }
  }
  return record;
}

std::vector<Word> LoadPretagged(const KnowledgeBase &kb,
                                const std::vector<TaggedToken> &tokens) {
  std::vector<Word> words;
  for (const TaggedToken &token : tokens) {
    if (!IsValidTag(token.pos)) {
      throw Error(ErrorCode::kFormat, "unknown pos tag '" + token.pos +
                                          "' on token '" + token.w + "'");
    }
    if (token.w.empty()) {
      throw Error(ErrorCode::kFormat, "empty token");
    }
    Word word = LexiconWord(kb, token.w);
    word.pos = token.pos;
    words.push_back(std::move(word));
  }
  return words;
}

std::vector<std::vector<TaggedToken>> SplitTaggedSubsentences(
    const std::vector<TaggedToken> &tokens, std::string_view delimiters) {
  const std::vector<std::string> delims = Utf8Chars(delimiters);
  std::vector<std::vector<TaggedToken>> groups(1);
  for (const TaggedToken &token : tokens) {
    if (IsDelimiter(token.w, delims)) {
      if (!groups.back().empty()) groups.emplace_back();
      continue;
    }
    groups.back().push_back(token);
  }
  if (groups.back().empty()) groups.pop_back();
  return groups;
}

}  // namespace kbparse
