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

#include "kbparse/element.h"

namespace kbparse {
namespace {

void AppendSignature(const Element &e, std::string *out) {
  if (e.is_word()) {
    *out += e.value;
    return;
  }
  *out += '[';
  *out += std::to_string(e.pattern_id);
  for (const Element &child : e.children) {
    *out += ' ';
    AppendSignature(child, out);
  }
  *out += ']';
}

void AppendLeaves(const Element &e, std::vector<std::string> *out) {
  if (e.is_word()) {
    out->push_back(e.value);
    return;
  }
  for (const Element &child : e.children) AppendLeaves(child, out);
}

}  // namespace

Element Element::FromWord(const Word &word) {
  Element e;
  e.kind = ElementKind::kWord;
  e.value = word.value;
  e.pos = word.pos;
  e.links = word.links;
  return e;
}

Element Element::MakePhrase(const PhrasePattern &pattern,
                            std::vector<Element> children,
                            std::string_view joiner) {
  Element e;
  e.kind = ElementKind::kPhrase;
  e.pos = pattern.pos_tag;
  e.pattern_id = pattern.id;
  e.core_index = pattern.core_word_index;
  for (size_t i = 0; i < children.size(); ++i) {
    if (i > 0) e.value += joiner;
    e.value += children[i].value;
  }
  e.children = std::move(children);
  return e;
}

const Element &CoreElement(const Element &element) {
  const Element *e = &element;
  while (!e->is_word() && e->core_index) e = &e->children[*e->core_index];
  return *e;
}

std::vector<ObjectRef> CoreLinks(const KnowledgeBase &kb,
                                 const Element &element) {
  const Element &core = CoreElement(element);
  if (core.is_word()) return core.links;
  std::vector<ObjectRef> links;
  for (const WordLink &link : kb.LookupWord(core.value)) {
    ObjectRef ref{link.object_kind, link.object_id};
    if (links.empty() || links.back() != ref) links.push_back(ref);
  }
  return links;
}

std::string DerivationSignature(const std::vector<Element> &elements) {
  std::string out;
  for (size_t i = 0; i < elements.size(); ++i) {
    if (i > 0) out += ' ';
    AppendSignature(elements[i], &out);
  }
  return out;
}

std::vector<std::string> LeafValues(const std::vector<Element> &elements) {
  std::vector<std::string> leaves;
  for (const Element &e : elements) AppendLeaves(e, &leaves);
  return leaves;
}

std::string ParseString(const std::vector<Element> &elements) {
  std::string out;
  for (size_t i = 0; i < elements.size(); ++i) {
    if (i > 0) out += '|';
    out += elements[i].pos;
  }
  return out;
}

}  // namespace kbparse
