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

#ifndef KBPARSE_ERROR_H_
#define KBPARSE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace kbparse {

enum class ErrorCode {
  kConfig,      // missing file, bad configuration
  kIntegrity,   // dangling reference, unknown id
  kFormat,      // malformed row, token or string
  kDuplicate,   // uniqueness violated
  kValidation,  // value outside its allowed domain
  kResource,    // search limits exceeded
  kStorage,     // I/O failure
  kNotFound,
};

std::string_view ErrorCodeName(ErrorCode code);

// All recoverable failures in the library are reported as an Error. The
// message is meant for humans and usually carries a "file:line:" prefix when
// the failure comes from a store file.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kbparse

#endif  // KBPARSE_ERROR_H_
