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

#ifndef KBPARSE_ELEMENT_H_
#define KBPARSE_ELEMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kbparse/grammar.h"
#include "kbparse/knowledge_base.h"
#include "kbparse/segmenter.h"

namespace kbparse {

enum class ElementKind { kWord, kPhrase };

// A parse node. Words and phrases share value, pos and core word; a phrase's
// pos comes from the pattern that built it, using the same tags as words.
struct Element {
  ElementKind kind = ElementKind::kWord;
  std::string value;
  std::string pos;

  // Word only.
  std::vector<ObjectRef> links;

  // Phrase only.
  uint64_t pattern_id = 0;
  std::optional<size_t> core_index;
  std::vector<Element> children;

  static Element FromWord(const Word &word);
  // |children| must have one element per feature of |pattern|.
  static Element MakePhrase(const PhrasePattern &pattern,
                            std::vector<Element> children,
                            std::string_view joiner);

  bool is_word() const { return kind == ElementKind::kWord; }
  bool operator==(const Element &) const = default;
};

// Follows core_index down the tree. Stops at a word, or at a phrase whose
// pattern has no core index (that phrase is its own core).
const Element &CoreElement(const Element &element);

inline const std::string &CoreWord(const Element &element) {
  return CoreElement(element).value;
}

// Objects linked to the core word: a word's own links, or a lexicon lookup
// of the value when the core is a phrase.
std::vector<ObjectRef> CoreLinks(const KnowledgeBase &kb,
                                 const Element &element);

// Bracketed structure, e.g. "XiaoMing [3 a beautiful car]". Leaf values are
// fixed by the input, so two states over the same words are equal iff their
// signatures are.
std::string DerivationSignature(const std::vector<Element> &elements);

// Leaf words, left to right.
std::vector<std::string> LeafValues(const std::vector<Element> &elements);

// "|"-joined pos of each element.
std::string ParseString(const std::vector<Element> &elements);

}  // namespace kbparse

#endif  // KBPARSE_ELEMENT_H_
