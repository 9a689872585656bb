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

#ifndef THREATFORGE_LIST_FILE_HPP_
#define THREATFORGE_LIST_FILE_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace threatforge {

// One `key = ["a", "b"]` line from a list-valued configuration file.
struct ListEntry {
  std::string key;
  std::vector<std::string> values;
  int line = 0;
};

// Reads the small TOML subset used by rule-table and mitigation-map
// overrides: one `key = [ "v", ... ]` per line, `#` comments, blank lines.
// Throws Error{kSchemaError} with the line number on anything else.
std::vector<ListEntry> parse_list_file(std::string_view text);

std::string read_text_file(const std::string& path);

}  // namespace threatforge

#endif  // THREATFORGE_LIST_FILE_HPP_
