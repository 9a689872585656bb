// Copyright 2026 The ThreatForge Authors.
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

#include "list_file.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace threatforge {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw Error(Errc::kSchemaError, what, SourceLoc{line, 1});
}

}  // namespace

std::vector<ListEntry> parse_list_file(std::string_view text) {
  std::vector<ListEntry> out;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    // Strip a trailing comment that is not inside quotes.
    bool quoted = false;
    std::size_t cut = raw.size();
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') quoted = !quoted;
      if (raw[i] == '#' && !quoted) {
        cut = i;
        break;
      }
    }
    std::string_view line = trim(raw.substr(0, cut));
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }

    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = [...]'");
    ListEntry entry;
    entry.key = std::string(trim(line.substr(0, eq)));
    entry.line = line_no;
    if (entry.key.empty()) fail(line_no, "missing key");
    for (char c : entry.key)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'))
        fail(line_no, "invalid key '" + entry.key + "'");

    std::string_view rest = trim(line.substr(eq + 1));
    if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']')
      fail(line_no, "value must be a bracketed list");
    rest = trim(rest.substr(1, rest.size() - 2));
    while (!rest.empty()) {
      if (rest.front() != '"') fail(line_no, "list items must be quoted");
      std::size_t close = rest.find('"', 1);
      if (close == std::string_view::npos) fail(line_no, "unterminated string");
      entry.values.emplace_back(rest.substr(1, close - 1));
      rest = trim(rest.substr(close + 1));
      if (rest.empty()) break;
      if (rest.front() != ',') fail(line_no, "expected ',' between items");
      rest = trim(rest.substr(1));
      if (rest.empty()) break;  // trailing comma
    }
    out.push_back(std::move(entry));
    if (end == text.size()) break;
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace threatforge
