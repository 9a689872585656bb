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

// Extraction of structured threat findings and control codes from free-form
// model output, plus the canonical text form findings are written in.

#ifndef THREATFORGE_PARSER_HPP_
#define THREATFORGE_PARSER_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nist.hpp"
#include "stride.hpp"

namespace threatforge::parse {

struct CodeScan {
  nist::CodeSet codes;
  std::vector<std::string> warnings;
};

// Every token shaped like a control code, normalized. Codes from families
// outside the catalog are kept and reported in `warnings`.
CodeScan extract_codes(std::string_view text,
                       nist::CompareMode mode = nist::CompareMode::kBaseOnly);

struct Span {
  std::size_t offset = 0;
  std::size_t length = 0;

  bool operator==(const Span&) const = default;
};

struct ParsedOutput {
  std::vector<stride::ThreatFinding> findings;
  std::vector<Span> finding_spans;  // parallel to findings
  std::vector<Span> unparsed_spans;
  std::vector<std::string> warnings;
};

// Cue words that split a threat block into description, mitigation and code
// sections. Matching is case-insensitive on word prefixes.
struct CueConfig {
  std::vector<std::string> description{"Description", "Threat Description"};
  std::vector<std::string> mitigation{"Mitigation", "Recommend"};
  std::vector<std::string> codes{"NIST", "Control code"};

  // Lines of `section: word`, section one of description|mitigation|code.
  // A section present in the file replaces the defaults for that section.
  static CueConfig parse(std::string_view text);
  static CueConfig load(const std::string& path);
};

// Never throws on any input.
ParsedOutput parse_findings(std::string_view text,
                            const CueConfig& cues = CueConfig{});

// Canonical block form, one block per finding separated by a blank line:
//   Threat Type: <name>
//   Description: ...
//   Mitigation: ...
//   NIST: <codes comma-separated>
std::string format_findings(std::span<const stride::ThreatFinding> findings);

}  // namespace threatforge::parse

#endif  // THREATFORGE_PARSER_HPP_
