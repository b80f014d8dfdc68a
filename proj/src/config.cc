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

#include "kbparse/config.h"

#include <charconv>
#include <cstdlib>
#include <functional>
#include <map>

#include "kbparse/error.h"
#include "kbparse/pos_tags.h"
#include "kbparse/text.h"

namespace kbparse {
namespace {

double ParseRatio(const std::string &value) {
  char *end = nullptr;
  double d = std::strtod(value.c_str(), &end);
  if (value.empty() || *end != '\0' || !(d > 0.0) || d > 1.0) {
    throw Error(ErrorCode::kConfig, "expected a ratio in (0, 1], got '" + value + "'");
  }
  return d;
}

size_t ParseCount(const std::string &value, uint64_t lo, uint64_t hi) {
  uint64_t n = 0;
  if (!ParseUint(value, &n) || n < lo || n > hi) {
    throw Error(ErrorCode::kConfig, "expected an integer in [" + std::to_string(lo) +
                                        ", " + std::to_string(hi) + "], got '" +
                                        value + "'");
  }
  return static_cast<size_t>(n);
}

bool ParseBool(const std::string &value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw Error(ErrorCode::kConfig, "expected true or false, got '" + value + "'");
}

using Setter = std::function<void(Config &, const std::string &)>;

const std::map<std::string, Setter, std::less<>> &Setters() {
  static const auto *setters = new std::map<std::string, Setter, std::less<>>{
      {"min_coverage", [](Config &c, const std::string &v) {
         c.learner.min_coverage = ParseRatio(v);
       }},
      {"min_precision", [](Config &c, const std::string &v) {
         c.learner.min_precision = ParseRatio(v);
       }},
      {"min_members", [](Config &c, const std::string &v) {
         c.learner.min_members = ParseCount(v, 1, 1000000);
       }},
      {"min_freq", [](Config &c, const std::string &v) {
         c.learner.min_freq = ParseCount(v, 2, 1000000000);
       }},
      {"cohesion", [](Config &c, const std::string &v) { c.learner.cohesion = ParseRatio(v); }},
      {"window", [](Config &c, const std::string &v) { c.learner.window = ParseCount(v, 1, 3); }},
      {"generalization_levels", [](Config &c, const std::string &v) {
         c.learner.generalization_levels = static_cast<int>(ParseCount(v, 0, 16));
       }},
      {"max_ngram", [](Config &c, const std::string &v) {
         c.learner.max_ngram = ParseCount(v, 2, 4);
       }},
      {"concept_rule_unit", [](Config &c, const std::string &v) {
         if (!ParseAffixUnit(v, &c.learner.concept_rule_unit)) {
           throw Error(ErrorCode::kConfig, "expected char or token, got '" + v + "'");
         }
       }},
      {"enable_concept_rule", [](Config &c, const std::string &v) {
         c.learner.enabled[0] = ParseBool(v);
       }},
      {"enable_new_concept", [](Config &c, const std::string &v) {
         c.learner.enabled[1] = ParseBool(v);
       }},
      {"enable_concept_feature", [](Config &c, const std::string &v) {
         c.learner.enabled[2] = ParseBool(v);
       }},
      {"enable_phrase_pattern", [](Config &c, const std::string &v) {
         c.learner.enabled[3] = ParseBool(v);
       }},
      {"enable_subsentence_pattern", [](Config &c, const std::string &v) {
         c.learner.enabled[4] = ParseBool(v);
       }},
      {"delimiters", [](Config &c, const std::string &v) {
         if (v.empty()) throw Error(ErrorCode::kConfig, "delimiters must not be empty");
         c.parse.delimiters = v;
       }},
      {"extra_tags", [](Config &c, const std::string &v) {
         c.extra_tags.clear();
         for (const std::string &tag : Split(v, ',')) {
           std::string t(Trim(tag));
           if (!t.empty()) c.extra_tags.push_back(t);
         }
       }},
      {"mode", [](Config &c, const std::string &v) {
         if (v == "fast") {
           c.parse.mode = ParseMode::kFast;
         } else if (v == "exhaustive") {
           c.parse.mode = ParseMode::kExhaustive;
         } else {
           throw Error(ErrorCode::kConfig, "expected fast or exhaustive, got '" + v + "'");
         }
       }},
      {"max_elements", [](Config &c, const std::string &v) {
         c.parse.limits.max_elements = ParseCount(v, 1, 64);
       }},
      {"max_derivations", [](Config &c, const std::string &v) {
         c.parse.limits.max_derivations = ParseCount(v, 1, 100000000);
       }},
      {"max_states", [](Config &c, const std::string &v) {
         c.parse.limits.max_states = ParseCount(v, 1, 1000000000);
       }},
      {"jobs", [](Config &c, const std::string &v) { c.jobs = ParseCount(v, 1, 256); }},
  };
  return *setters;
}

std::string Ratio(double d) {
  char buf[32];
  std::to_chars_result result = std::to_chars(buf, buf + sizeof(buf), d);
  return std::string(buf, result.ptr);
}

}  // namespace

Config ParseConfig(std::string_view text, std::string_view source) {
  Config config;
  const auto &setters = Setters();
  size_t line_no = 0;
  for (const std::string &raw : Split(text, '\n')) {
    ++line_no;
    std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
    size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kConfig, where + "expected key=value");
    }
    std::string key(Trim(line.substr(0, eq)));
    std::string value(Trim(line.substr(eq + 1)));
    auto it = setters.find(key);
    if (it == setters.end()) {
      throw Error(ErrorCode::kConfig, where + "unknown key '" + key + "'");
    }
    try {
      it->second(config, value);
    } catch (const Error &e) {
      throw Error(ErrorCode::kConfig, where + key + ": " + e.what());
    }
  }
  for (const std::string &tag : config.extra_tags) {
    if (tag.find_first_of("|:\t\n ") != std::string::npos) {
      throw Error(ErrorCode::kConfig, std::string(source) + ": bad extra tag '" + tag + "'");
    }
  }
  return config;
}

Config LoadConfig(const std::filesystem::path &path) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kConfig, "missing config file " + path.string());
  }
  return ParseConfig(ReadFile(path), path.string());
}

std::string FormatConfig(const Config &c) {
  const LearnerConfig &l = c.learner;
  std::string out;
  auto put = [&out](std::string_view key, const std::string &value) {
    out += key;
    out += '=';
    out += value;
    out += '\n';
  };
  auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
  put("min_coverage", Ratio(l.min_coverage));
  put("min_precision", Ratio(l.min_precision));
  put("min_members", std::to_string(l.min_members));
  put("min_freq", std::to_string(l.min_freq));
  put("cohesion", Ratio(l.cohesion));
  put("window", std::to_string(l.window));
  put("generalization_levels", std::to_string(l.generalization_levels));
  put("max_ngram", std::to_string(l.max_ngram));
  put("concept_rule_unit", std::string(AffixUnitName(l.concept_rule_unit)));
  put("enable_concept_rule", flag(l.enabled[0]));
  put("enable_new_concept", flag(l.enabled[1]));
  put("enable_concept_feature", flag(l.enabled[2]));
  put("enable_phrase_pattern", flag(l.enabled[3]));
  put("enable_subsentence_pattern", flag(l.enabled[4]));
  put("delimiters", c.parse.delimiters);
  put("extra_tags", Join(c.extra_tags, ","));
  put("mode", c.parse.mode == ParseMode::kFast ? "fast" : "exhaustive");
  put("max_elements", std::to_string(c.parse.limits.max_elements));
  put("max_derivations", std::to_string(c.parse.limits.max_derivations));
  put("max_states", std::to_string(c.parse.limits.max_states));
  put("jobs", std::to_string(c.jobs));
  return out;
}

}  // namespace kbparse
