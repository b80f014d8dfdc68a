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

#include "kbparse/pos_tags.h"

#include <algorithm>
#include <mutex>
#include <shared_mutex>

namespace kbparse {
namespace {

std::shared_mutex &ExtraTagsMutex() {
  static std::shared_mutex mu;
  return mu;
}

std::vector<std::string> &ExtraTags() {
  static std::vector<std::string> tags;
  return tags;
}

}  // namespace

bool IsValidTag(std::string_view tag) {
  for (std::string_view builtin : kBuiltinTags) {
    if (builtin == tag) return true;
  }
  std::shared_lock lock(ExtraTagsMutex());
  const auto &extra = ExtraTags();
  return std::find(extra.begin(), extra.end(), tag) != extra.end();
}

void RegisterExtraTags(const std::vector<std::string> &tags) {
  std::unique_lock lock(ExtraTagsMutex());
  for (const std::string &tag : tags) {
    if (tag.empty()) continue;
    auto &extra = ExtraTags();
    if (std::find(extra.begin(), extra.end(), tag) == extra.end()) {
      extra.push_back(tag);
    }
  }
}

}  // namespace kbparse
