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

#include "kbparse/parse_json.h"

#include <string>

#include "kbparse/error.h"
#include "kbparse/segmenter.h"

namespace kbparse {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json SentenceParseToJson(const SentenceParse &parse) {
  ordered_json out;
  out["text"] = parse.text;
  out["subsentences"] = ordered_json::array();
  for (const SubsentenceParse &sub : parse.subsentences) {
    ordered_json s;
    s["parse_str"] = sub.parse_str;
    s["status"] = sub.status == ParseStatus::kParsed ? "parsed" : "unparsed";
    if (sub.matched_pattern) {
      s["ss_type"] = SubsentenceTypeName(sub.matched_pattern->ss_type);
      s["ss_type2"] = SpeechActName(sub.matched_pattern->ss_type2);
    } else {
      s["ss_type"] = nullptr;
      s["ss_type2"] = nullptr;
    }
    s["elements"] = ordered_json::array();
    for (const Element &e : sub.elements) {
      s["elements"].push_back(ordered_json{
          {"value", e.value}, {"pos", e.pos}, {"core_word", CoreWord(e)}});
    }
    s["relations"] = ordered_json::array();
    for (const ExtractedRelation &r : sub.relations) {
      s["relations"].push_back(ordered_json{{"type", RelationTypeName(r.type)},
                                            {"head", r.head},
                                            {"tail", r.tail},
                                            {"head_index", r.head_index},
                                            {"tail_index", r.tail_index}});
    }
    out["subsentences"].push_back(std::move(s));
  }
  out["coverage"] = parse.coverage;
  return out;
}

std::vector<LearnSubsentence> LearnInputFromJsonLine(const KnowledgeBase &kb,
                                                     std::string_view line) {
  std::vector<LearnSubsentence> out;
  try {
    json j = json::parse(line);
    const std::string joiner(JoinerFor(j.at("text").get<std::string>()));
    for (const json &s : j.at("subsentences")) {
      LearnSubsentence sub;
      sub.joiner = joiner;
      sub.parse_str = s.at("parse_str").get<std::string>();
      const std::string status = s.at("status").get<std::string>();
      if (status != "parsed" && status != "unparsed") {
        throw Error(ErrorCode::kFormat, "bad status '" + status + "'");
      }
      sub.parsed = status == "parsed";
      for (const json &e : s.at("elements")) {
        LearnToken t;
        t.value = e.at("value").get<std::string>();
        t.pos = e.at("pos").get<std::string>();
        t.core = e.at("core_word").get<std::string>();
        for (const ObjectRef &ref : LexiconWord(kb, t.core).links) {
          if (ref.kind == ObjectKind::kConcept) t.concepts.push_back(ref.id);
        }
        sub.tokens.push_back(std::move(t));
      }
      out.push_back(std::move(sub));
    }
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kFormat, std::string("bad parse record: ") + e.what());
  }
  return out;
}

}  // namespace kbparse
