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

#ifndef KBPARSE_POS_TAGS_H_
#define KBPARSE_POS_TAGS_H_

#include <string>
#include <string_view>
#include <vector>

namespace kbparse {

// Closed part-of-speech inventory: a subset of the Chinese Treebank tags plus
// QA for question words and UNK for tokens the lexicon does not know.
inline constexpr std::string_view kBuiltinTags[] = {
    "NN", "VV", "JJ", "DT", "AD", "PN", "CD",
    "M",  "P",  "CC", "QA", "PU", "UNK"};

inline constexpr std::string_view kUnknownTag = "UNK";

bool IsValidTag(std::string_view tag);

// Extends the tag set for the rest of the process. Intended to be called once
// at startup from configuration, before any store is loaded.
void RegisterExtraTags(const std::vector<std::string> &tags);

}  // namespace kbparse

#endif  // KBPARSE_POS_TAGS_H_
