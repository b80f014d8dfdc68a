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

#ifndef KBPARSE_SEGMENTER_H_
#define KBPARSE_SEGMENTER_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kbparse/grammar.h"
#include "kbparse/knowledge_base.h"

namespace kbparse {

struct Word {
  std::string value;
  std::string pos;
  // Objects linked to |value|, deduplicated, in LookupWord order.
  std::vector<ObjectRef> links;

  bool operator==(const Word &) const = default;
};

struct SubsentenceText {
  std::string text;
  std::optional<std::string> delimiter;  // one UTF-8 character

  bool operator==(const SubsentenceText &) const = default;
};

// ASCII and full-width commas, semicolons and sentence terminators.
inline constexpr std::string_view kDefaultDelimiters = ",;。，；！？.!?";

// Splits at every delimiter character, trims each piece and drops empty
// pieces. A dropped piece's delimiter is dropped with it.
std::vector<SubsentenceText> SplitSubsentences(
    std::string_view text,
    std::string_view delimiters = kDefaultDelimiters);

// A Word for |surface| carrying all its lexicon links; the pos is the first
// link's pos, or UNK when the surface is unknown.
Word LexiconWord(const KnowledgeBase &kb, std::string_view surface);

// Space-separated text is joined back with spaces, anything else directly.
std::string_view JoinerFor(std::string_view text);

// Tokenizes subsentences against the knowledge-base lexicon.
//
// Text containing ASCII spaces is tokenized on spaces, then the longest run
// of tokens that forms a lexicon surface is taken greedily; a lone token the
// lexicon does not know is tagged UNK. Other text is matched greedily by
// longest lexicon surface over code points, falling back to one UNK code
// point. Unknown tokens that satisfy a concept rule receive a provisional
// link to the rule's concept instead of UNK.
class Segmenter {
 public:
  Segmenter(const KnowledgeBase &kb, const std::vector<ConceptRule> &rules);

  std::vector<Word> Segment(std::string_view text) const;

  Word MakeWord(std::string_view surface) const;

 private:
  std::vector<Word> SegmentSpaced(std::string_view text) const;
  std::vector<Word> SegmentUnspaced(std::string_view text) const;
  // Applies concept rules starting at token |i|. Returns the number of tokens
  // consumed, or 0 if no rule applies.
  size_t MatchRules(const std::vector<std::string> &tokens, size_t i,
                    Word *word) const;

  const KnowledgeBase &kb_;
  const std::vector<ConceptRule> &rules_;
  size_t max_surface_chars_ = 0;
  size_t max_surface_tokens_ = 0;
};

// Convenience wrapper without concept rules.
std::vector<Word> Segment(const KnowledgeBase &kb, std::string_view text);

struct TaggedToken {
  std::string w;
  std::string pos;

  bool operator==(const TaggedToken &) const = default;
};

// One corpus line: {"text": ..., "tokens": [{"w": ..., "pos": ...}]}.
struct CorpusRecord {
  std::string text;
  std::optional<std::vector<TaggedToken>> tokens;
};

// Throws kFormat on invalid JSON or a missing/ill-typed field.
CorpusRecord ParseCorpusLine(std::string_view line);

// Builds words from externally tagged tokens, resolving links by surface.
// Throws kFormat on a tag outside the tag set.
std::vector<Word> LoadPretagged(const KnowledgeBase &kb,
                                const std::vector<TaggedToken> &tokens);

// Splits a tagged token stream at tokens that are a single delimiter
// character; delimiter tokens are dropped, empty groups skipped.
std::vector<std::vector<TaggedToken>> SplitTaggedSubsentences(
    const std::vector<TaggedToken> &tokens,
    std::string_view delimiters = kDefaultDelimiters);

}  // namespace kbparse

#endif  // KBPARSE_SEGMENTER_H_
