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

// String helpers shared by the stores: UTF-8 code point splitting, the
// percent escaping used in TSV fields, and atomic file replacement.

#ifndef KBPARSE_TEXT_H_
#define KBPARSE_TEXT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace kbparse {

// Splits |text| into UTF-8 code points. Invalid bytes are returned as
// single-byte pieces; concatenating the result always gives |text|.
std::vector<std::string> Utf8Chars(std::string_view text);

// Percent-encodes '%', tab, newline, '|' and ':'.
std::string EscapeField(std::string_view raw);

// Inverse of EscapeField. Throws Error(kFormat) on a malformed escape.
std::string UnescapeField(std::string_view escaped);

std::vector<std::string> Split(std::string_view text, char sep);
std::string Join(const std::vector<std::string> &parts, std::string_view sep);
std::string_view Trim(std::string_view text);

// Parses a non-negative decimal integer; the whole string must be digits.
bool ParseUint(std::string_view text, uint64_t *out);

// Parses a comma-joined id list ("" is the empty list).
bool ParseIdList(std::string_view text, std::vector<uint64_t> *out);

struct TsvRow {
  size_t line = 0;  // 1-based line number in the file
  std::vector<std::string> fields;
};

// Reads a tab-separated file whose first line must equal |header|. Blank
// lines are skipped. Throws kConfig when the file is missing and kFormat on a
// header mismatch or a row with the wrong number of fields.
std::vector<TsvRow> ReadTsv(const std::filesystem::path &path,
                            const std::vector<std::string_view> &header);

// "path:line: " prefix for diagnostics.
std::string Where(const std::filesystem::path &path, size_t line);

// Reads a whole file. Throws Error(kConfig) when the file cannot be opened.
std::string ReadFile(const std::filesystem::path &path);

// Writes |contents| to a temporary sibling and renames it over |path|, so
// readers never observe a partially written file. Throws Error(kStorage).
void WriteFileAtomic(const std::filesystem::path &path,
                     std::string_view contents);

}  // namespace kbparse

#endif  // KBPARSE_TEXT_H_
