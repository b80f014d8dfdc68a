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

#ifndef KBPARSE_CONFIG_H_
#define KBPARSE_CONFIG_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "kbparse/learner.h"
#include "kbparse/parser.h"

namespace kbparse {

struct Config {
  LearnerConfig learner;
  ParseOptions parse;
  size_t jobs = 1;
  std::vector<std::string> extra_tags;
};

// key=value lines; blank lines and lines starting with '#' are ignored.
// Unknown keys and out-of-range values raise kConfig naming |source| and
// the line.
Config ParseConfig(std::string_view text, std::string_view source = "<config>");
Config LoadConfig(const std::filesystem::path &path);

// Every key with its current value, in the file format.
std::string FormatConfig(const Config &config);

}  // namespace kbparse

#endif  // KBPARSE_CONFIG_H_
