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

#ifndef KBPARSE_PARSE_JSON_H_
#define KBPARSE_PARSE_JSON_H_

#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "kbparse/knowledge_base.h"
#include "kbparse/learner.h"
#include "kbparse/parser.h"

namespace kbparse {

// {"text", "subsentences": [{"parse_str", "status", "ss_type", "ss_type2",
// "elements": [{"value", "pos", "core_word"}], "relations": [{"type",
// "head", "tail", "head_index", "tail_index"}]}], "coverage"}
nlohmann::ordered_json SentenceParseToJson(const SentenceParse &parse);

// Reads one line of parse output back as learner input. Core-word links are
// resolved against |kb|. Throws kFormat.
std::vector<LearnSubsentence> LearnInputFromJsonLine(const KnowledgeBase &kb,
                                                     std::string_view line);

}  // namespace kbparse

#endif  // KBPARSE_PARSE_JSON_H_
