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

// HTTP review API over a Workspace.
//
//   GET  /stats
//   GET  /candidates?status=S&kind=K&page=P&per_page=N
//   GET  /candidates/{id}
//   POST /candidates/{id}/decision   {"decision": "accept"|"reject",
//                                     "meaning": "nsubj:0:1"}
//   POST /iterate                    {"rounds": N}
//   GET  /parse?text=...
//   GET  /grammar/phrase_patterns
//   GET  /grammar/subsentence_patterns
//
// Reads run concurrently; decisions and iterations are serialized, and each
// mutation is persisted before its response is sent.

#ifndef KBPARSE_SERVICE_H_
#define KBPARSE_SERVICE_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kbparse/config.h"
#include "kbparse/pipeline.h"

namespace httplib {
class Server;
}

namespace kbparse {

class ReviewService {
 public:
  // |corpus| is what POST /iterate runs over; without it that endpoint
  // answers 409.
  ReviewService(Workspace workspace, Config config,
                std::optional<std::filesystem::path> corpus);
  ~ReviewService();

  ReviewService(const ReviewService &) = delete;
  ReviewService &operator=(const ReviewService &) = delete;

  // Binds |host|:|port| (0 picks a free port). Returns the bound port, or -1.
  int Bind(const std::string &host, int port);
  // Serves until Stop(). Returns false if the server could not run.
  bool Serve();
  void Stop();

 private:
  void Register();

  std::unique_ptr<httplib::Server> server_;
  mutable std::shared_mutex mu_;
  Workspace workspace_;
  Config config_;
  std::optional<std::filesystem::path> corpus_;
  std::vector<IterationReport> reports_;
};

}  // namespace kbparse

#endif  // KBPARSE_SERVICE_H_
