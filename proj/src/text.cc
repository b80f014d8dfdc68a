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

#include "kbparse/text.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "kbparse/error.h"

namespace kbparse {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig: return "configuration error";
    case ErrorCode::kIntegrity: return "integrity error";
    case ErrorCode::kFormat: return "format error";
    case ErrorCode::kDuplicate: return "duplicate error";
    case ErrorCode::kValidation: return "validation error";
    case ErrorCode::kResource: return "resource error";
    case ErrorCode::kStorage: return "storage error";
    case ErrorCode::kNotFound: return "not found";
  }
  return "error";
}

std::vector<std::string> Utf8Chars(std::string_view text) {
  std::vector<std::string> chars;
  size_t i = 0;
  while (i < text.size()) {
    unsigned char lead = static_cast<unsigned char>(text[i]);
    size_t len = 1;
    if (lead >= 0xF0 && lead < 0xF8) {
      len = 4;
    } else if (lead >= 0xE0) {
      len = lead < 0xF0 ? 3 : 1;
    } else if (lead >= 0xC0) {
      len = 2;
    }
    if (i + len > text.size()) len = 1;
    for (size_t k = 1; k < len; ++k) {
      unsigned char c = static_cast<unsigned char>(text[i + k]);
      if ((c & 0xC0) != 0x80) {
        len = 1;
        break;
      }
    }
    chars.emplace_back(text.substr(i, len));
    i += len;
  }
  return chars;
}

std::string EscapeField(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '%': out += "%25"; break;
      case '\t': out += "%09"; break;
      case '\n': out += "%0A"; break;
      case '|': out += "%7C"; break;
      case ':': out += "%3A"; break;
      default: out += c;
    }
  }
  return out;
}

static int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

std::string UnescapeField(std::string_view escaped) {
  std::string out;
  out.reserve(escaped.size());
  for (size_t i = 0; i < escaped.size(); ++i) {
    if (escaped[i] != '%') {
      out += escaped[i];
      continue;
    }
    if (i + 2 >= escaped.size()) {
      throw Error(ErrorCode::kFormat,
                  "truncated escape in '" + std::string(escaped) + "'");
    }
    int hi = HexValue(escaped[i + 1]);
    int lo = HexValue(escaped[i + 2]);
    if (hi < 0 || lo < 0) {
      throw Error(ErrorCode::kFormat,
                  "bad escape in '" + std::string(escaped) + "'");
    }
    out += static_cast<char>(hi * 16 + lo);
    i += 2;
  }
  return out;
}

std::vector<std::string> Split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(text.substr(start));
      break;
    }
    parts.emplace_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

std::string Join(const std::vector<std::string> &parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string_view Trim(std::string_view text) {
  const char *ws = " \t\r\n";
  size_t begin = text.find_first_not_of(ws);
  if (begin == std::string_view::npos) return {};
  size_t end = text.find_last_not_of(ws);
  return text.substr(begin, end - begin + 1);
}

bool ParseUint(std::string_view text, uint64_t *out) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), *out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

bool ParseIdList(std::string_view text, std::vector<uint64_t> *out) {
  out->clear();
  if (text.empty()) return true;
  for (const std::string &item : Split(text, ',')) {
    uint64_t id;
    if (!ParseUint(item, &id)) return false;
    out->push_back(id);
  }
  return true;
}

std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kConfig, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<TsvRow> ReadTsv(const std::filesystem::path &path,
                            const std::vector<std::string_view> &header) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kConfig, "missing file " + path.string());
  }
  std::string contents = ReadFile(path);
  std::vector<std::string> lines = Split(contents, '\n');
  std::vector<TsvRow> rows;
  bool saw_header = false;
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string &line = lines[i];
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = Split(line, '\t');
    if (!saw_header) {
      std::vector<std::string> expected(header.begin(), header.end());
      if (fields != expected) {
        throw Error(ErrorCode::kFormat, Where(path, i + 1) +
                                            "expected header '" +
                                            Join(expected, "\\t") + "'");
      }
      saw_header = true;
      continue;
    }
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::kFormat,
                  Where(path, i + 1) + "expected " +
                      std::to_string(header.size()) + " fields, got " +
                      std::to_string(fields.size()));
    }
    rows.push_back({i + 1, std::move(fields)});
  }
  if (!saw_header) {
    throw Error(ErrorCode::kFormat, Where(path, 1) + "missing header");
  }
  return rows;
}

std::string Where(const std::filesystem::path &path, size_t line) {
  return path.string() + ":" + std::to_string(line) + ": ";
}

void WriteFileAtomic(const std::filesystem::path &path,
                     std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::kStorage, "cannot write " + tmp.string());
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      throw Error(ErrorCode::kStorage, "short write to " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw Error(ErrorCode::kStorage,
                "cannot rename " + tmp.string() + ": " + ec.message());
  }
}

}  // namespace kbparse
