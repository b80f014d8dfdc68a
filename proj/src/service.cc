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

#include "kbparse/service.h"

#include <algorithm>
#include <mutex>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "kbparse/error.h"
#include "kbparse/parse_json.h"
#include "kbparse/text.h"

namespace kbparse {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void Reply(httplib::Response &res, int status, const ordered_json &body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void Fail(httplib::Response &res, int status, const std::string &message) {
  Reply(res, status, ordered_json{{"error", message}});
}

int StatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kFormat:
    case ErrorCode::kValidation: return 400;
    case ErrorCode::kDuplicate: return 409;
    default: return 500;
  }
}

bool ParseIdParam(const std::string &text, uint64_t *id) {
  return ParseUint(text, id);
}

ordered_json PhrasePatternJson(const PhrasePattern &p) {
  ordered_json j;
  j["id"] = p.id;
  j["features"] = FeaturesToString(p.features);
  if (p.core_word_index) {
    j["core_word_index"] = *p.core_word_index;
  } else {
    j["core_word_index"] = nullptr;
  }
  j["pos_tag"] = p.pos_tag;
  j["meaning"] = p.meaning;
  j["status"] = PatternStatusName(p.status);
  return j;
}

ordered_json SubsentencePatternJson(const SubsentencePattern &p) {
  ordered_json j;
  j["parse_str"] = p.parse_str;
  j["ss_type"] = SubsentenceTypeName(p.ss_type);
  j["ss_type2"] = SpeechActName(p.ss_type2);
  j["meaning"] = SerializeMeaning(p.meaning);
  j["status"] = PatternStatusName(p.status);
  return j;
}

}  // namespace

ReviewService::ReviewService(Workspace workspace, Config config,
                             std::optional<std::filesystem::path> corpus)
    : server_(std::make_unique<httplib::Server>()),
      workspace_(std::move(workspace)),
      config_(std::move(config)),
      corpus_(std::move(corpus)) {
  Register();
}

ReviewService::~ReviewService() { Stop(); }

int ReviewService::Bind(const std::string &host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool ReviewService::Serve() { return server_->listen_after_bind(); }

void ReviewService::Stop() {
  if (server_) server_->stop();
}

void ReviewService::Register() {
  httplib::Server &s = *server_;

  s.set_exception_handler([](const httplib::Request &, httplib::Response &res,
                             std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const Error &e) {
      Fail(res, StatusFor(e.code()), e.what());
    } catch (const std::exception &e) {
      Fail(res, 500, e.what());
    }
  });

  s.Get("/stats", [this](const httplib::Request &, httplib::Response &res) {
    std::shared_lock lock(mu_);
    const Workspace &ws = workspace_;
    ordered_json j;
    j["concepts"] = ws.kb().concepts().size();
    j["methods"] = ws.kb().methods().size();
    j["words"] = ws.kb().word_count();
    j["relations"] = ws.kb().relations().size();
    j["phrase_patterns"] = ws.gb().phrase_patterns().size();
    j["subsentence_patterns"] = ws.gb().subsentence_patterns().size();
    j["concept_rules"] = ws.gb().concept_rules().size();
    ordered_json by_status{{"pending", 0}, {"accepted", 0}, {"rejected", 0}};
    for (const CandidateRule &c : ws.candidates().candidates()) {
      by_status[std::string(CandidateStatusName(c.status))] =
          by_status[std::string(CandidateStatusName(c.status))].get<size_t>() + 1;
    }
    j["candidates"] = by_status;
    j["iterate_available"] = corpus_.has_value();
    if (reports_.empty()) {
      j["last_report"] = nullptr;
    } else {
      j["last_report"] = ReportToJson(reports_.back());
    }
    Reply(res, 200, j);
  });

  s.Get("/candidates", [this](const httplib::Request &req, httplib::Response &res) {
    std::optional<CandidateStatus> status;
    std::optional<CandidateKind> kind;
    uint64_t page = 1;
    uint64_t per_page = 50;
    if (req.has_param("status")) {
      CandidateStatus st;
      if (!ParseCandidateStatus(req.get_param_value("status"), &st)) {
        return Fail(res, 400, "bad status filter");
      }
      status = st;
    }
    if (req.has_param("kind")) {
      CandidateKind k;
      if (!ParseCandidateKind(req.get_param_value("kind"), &k)) {
        return Fail(res, 400, "bad kind filter");
      }
      kind = k;
    }
    if (req.has_param("page") &&
        (!ParseUint(req.get_param_value("page"), &page) || page == 0)) {
      return Fail(res, 400, "page must be a positive integer");
    }
    if (req.has_param("per_page") &&
        (!ParseUint(req.get_param_value("per_page"), &per_page) ||
         per_page == 0 || per_page > 1000)) {
      return Fail(res, 400, "per_page must be in [1, 1000]");
    }

    std::shared_lock lock(mu_);
    std::vector<const CandidateRule *> matches;
    for (const CandidateRule &c : workspace_.candidates().candidates()) {
      if (status && c.status != *status) continue;
      if (kind && c.kind() != *kind) continue;
      matches.push_back(&c);
    }
    std::stable_sort(matches.begin(), matches.end(),
                     [](const CandidateRule *a, const CandidateRule *b) {
                       return a->support > b->support;
                     });
    ordered_json items = ordered_json::array();
    const size_t begin = (page - 1) * per_page;
    for (size_t i = begin; i < matches.size() && i < begin + per_page; ++i) {
      items.push_back(CandidateToJson(*matches[i]));
    }
    res.set_header("X-Total-Count", std::to_string(matches.size()));
    Reply(res, 200, items);
  });

  s.Get(R"(/candidates/(\d+))", [this](const httplib::Request &req,
                                       httplib::Response &res) {
    uint64_t id = 0;
    if (!ParseIdParam(req.matches[1], &id)) return Fail(res, 400, "bad id");
    std::shared_lock lock(mu_);
    const CandidateRule *c = workspace_.candidates().Find(id);
    if (c == nullptr) return Fail(res, 404, "no candidate " + std::to_string(id));
    Reply(res, 200, CandidateToJson(*c));
  });

  s.Post(R"(/candidates/(\d+)/decision)", [this](const httplib::Request &req,
                                                 httplib::Response &res) {
    uint64_t id = 0;
    if (!ParseIdParam(req.matches[1], &id)) return Fail(res, 400, "bad id");
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object() || !body.contains("decision") ||
        !body["decision"].is_string()) {
      return Fail(res, 400, "body must be {\"decision\": \"accept\"|\"reject\"}");
    }
    const std::string verdict = body["decision"].get<std::string>();
    if (verdict != "accept" && verdict != "reject") {
      return Fail(res, 400, "decision must be accept or reject");
    }
    Decision decision;
    decision.accept = verdict == "accept";
    if (body.contains("meaning") && !body["meaning"].is_null()) {
      if (!body["meaning"].is_string()) return Fail(res, 400, "meaning must be a string");
      decision.meaning = body["meaning"].get<std::string>();
    }

    std::unique_lock lock(mu_);
    const CandidateRule *c = workspace_.candidates().Find(id);
    if (c == nullptr) return Fail(res, 404, "no candidate " + std::to_string(id));
    if (c->status != CandidateStatus::kPending) {
      return Fail(res, 409, "candidate " + std::to_string(id) + " is already " +
                                std::string(CandidateStatusName(c->status)));
    }
    std::optional<std::string> note = workspace_.Decide(id, decision);
    ordered_json j = CandidateToJson(*workspace_.candidates().Find(id));
    Reply(res, note ? 422 : 200, j);
  });

  s.Post("/iterate", [this](const httplib::Request &req, httplib::Response &res) {
    uint64_t rounds = 1;
    if (!req.body.empty()) {
      json body = json::parse(req.body, nullptr, false);
      if (body.is_discarded() || !body.is_object()) {
        return Fail(res, 400, "body must be {\"rounds\": N}");
      }
      if (body.contains("rounds")) {
        if (!body["rounds"].is_number_unsigned()) {
          return Fail(res, 400, "rounds must be a non-negative integer");
        }
        rounds = body["rounds"].get<uint64_t>();
      }
    }
    if (rounds > 100) return Fail(res, 400, "rounds must be at most 100");
    if (!corpus_) return Fail(res, 409, "service was started without a corpus");

    std::vector<CorpusLine> corpus = ReadCorpus(*corpus_);
    std::unique_lock lock(mu_);
    ordered_json reports = ordered_json::array();
    for (uint64_t r = 0; r < rounds; ++r) {
      workspace_.ApplyAccepted();
      IterationReport report = workspace_.RunRound(corpus, config_);
      reports_.push_back(report);
      reports.push_back(ReportToJson(report));
      spdlog::info("iteration {}: {}", report.iteration, ReportToJson(report).dump());
    }
    Reply(res, 200, reports);
  });

  s.Get("/parse", [this](const httplib::Request &req, httplib::Response &res) {
    if (!req.has_param("text")) return Fail(res, 400, "missing text parameter");
    const std::string text = req.get_param_value("text");
    std::shared_lock lock(mu_);
    SentenceParser parser(workspace_.kb(), workspace_.gb(), config_.parse);
    Reply(res, 200, SentenceParseToJson(parser.Parse(text)));
  });

  s.Get("/grammar/phrase_patterns",
        [this](const httplib::Request &, httplib::Response &res) {
          std::shared_lock lock(mu_);
          ordered_json items = ordered_json::array();
          for (const PhrasePattern &p : workspace_.gb().phrase_patterns()) {
            items.push_back(PhrasePatternJson(p));
          }
          Reply(res, 200, items);
        });

  s.Get("/grammar/subsentence_patterns",
        [this](const httplib::Request &, httplib::Response &res) {
          std::shared_lock lock(mu_);
          ordered_json items = ordered_json::array();
          for (const auto &[key, p] : workspace_.gb().subsentence_patterns()) {
            items.push_back(SubsentencePatternJson(p));
          }
          Reply(res, 200, items);
        });
}

}  // namespace kbparse
