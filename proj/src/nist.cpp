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

#include "nist.hpp"

#include <algorithm>
#include <cctype>

#include "error.hpp"
#include "list_file.hpp"

namespace threatforge::nist {

std::string ControlCode::text() const {
  std::string out = family + "-" + std::to_string(number);
  if (enhancement) out += "(" + std::to_string(*enhancement) + ")";
  return out;
}

namespace {

std::optional<int> read_number(std::string_view s, std::size_t& pos) {
  std::size_t start = pos;
  long value = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    value = value * 10 + (s[pos] - '0');
    if (value > 999999) return std::nullopt;
    ++pos;
  }
  if (pos == start || value == 0) return std::nullopt;
  return static_cast<int>(value);
}

}  // namespace

std::optional<ControlCode> try_normalize_code(std::string_view raw) {
  std::size_t colon = raw.find(':');
  if (colon != std::string_view::npos) raw = raw.substr(0, colon);
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);

  if (s.size() < 4) return std::nullopt;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) ||
      !std::isalpha(static_cast<unsigned char>(s[1])) || s[2] != '-')
    return std::nullopt;
  ControlCode code;
  code.family = {static_cast<char>(std::toupper(static_cast<unsigned char>(s[0]))),
                 static_cast<char>(std::toupper(static_cast<unsigned char>(s[1])))};
  std::size_t pos = 3;
  auto number = read_number(s, pos);
  if (!number) return std::nullopt;
  code.number = *number;
  if (pos < s.size()) {
    if (s[pos] != '(') return std::nullopt;
    ++pos;
    auto enh = read_number(s, pos);
    if (!enh || pos >= s.size() || s[pos] != ')') return std::nullopt;
    ++pos;
    code.enhancement = *enh;
  }
  if (pos != s.size()) return std::nullopt;
  return code;
}

ControlCode normalize_code(std::string_view raw) {
  if (auto c = try_normalize_code(raw)) return *c;
  throw Error(Errc::kNotACode, "not a control code: '" + std::string(raw) + "'");
}

// ---------------------------------------------------------------------------

CodeSet::CodeSet(std::initializer_list<std::string_view> codes, CompareMode mode)
    : mode_(mode) {
  for (auto c : codes) insert(normalize_code(c));
}

bool CodeSet::insert(const ControlCode& code) {
  ControlCode k = key(code);
  auto it = std::lower_bound(
      codes_.begin(), codes_.end(), k,
      [this](const ControlCode& a, const ControlCode& b) { return key(a) < b; });
  if (it != codes_.end() && key(*it) == k) return false;
  codes_.insert(it, code);
  return true;
}

void CodeSet::insert_all(const CodeSet& other) {
  for (const auto& c : other.codes_) insert(c);
}

bool CodeSet::contains(const ControlCode& code) const {
  ControlCode k = key(code);
  auto it = std::lower_bound(
      codes_.begin(), codes_.end(), k,
      [this](const ControlCode& a, const ControlCode& b) { return key(a) < b; });
  return it != codes_.end() && key(*it) == k;
}

std::vector<std::string> CodeSet::texts() const {
  std::vector<std::string> out;
  out.reserve(codes_.size());
  for (const auto& c : codes_) out.push_back(c.text());
  return out;
}

std::string CodeSet::joined(std::string_view sep) const {
  std::string out;
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    if (i) out += sep;
    out += codes_[i].text();
  }
  return out;
}

std::size_t CodeSet::intersection_size(const CodeSet& other) const {
  if (mode_ != other.mode_)
    throw Error(Errc::kModeMismatch, "code sets use different comparison modes");
  std::size_t n = 0;
  for (const auto& c : codes_)
    if (other.contains(c)) ++n;
  return n;
}

bool operator==(const CodeSet& a, const CodeSet& b) {
  if (a.mode_ != b.mode_ || a.codes_.size() != b.codes_.size()) return false;
  for (std::size_t i = 0; i < a.codes_.size(); ++i)
    if (a.key(a.codes_[i]) != b.key(b.codes_[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------

const std::array<Family, 20>& families() {
  static const std::array<Family, 20> kFamilies = {{
      {"AC", "Access Control"},
      {"AT", "Awareness and Training"},
      {"AU", "Audit and Accountability"},
      {"CA", "Assessment, Authorization, and Monitoring"},
      {"CM", "Configuration Management"},
      {"CP", "Contingency Planning"},
      {"IA", "Identification and Authentication"},
      {"IR", "Incident Response"},
      {"MA", "Maintenance"},
      {"MP", "Media Protection"},
      {"PE", "Physical and Environmental Protection"},
      {"PL", "Planning"},
      {"PM", "Program Management"},
      {"PS", "Personnel Security"},
      {"PT", "PII Processing and Transparency"},
      {"RA", "Risk Assessment"},
      {"SA", "System and Services Acquisition"},
      {"SC", "System and Communications Protection"},
      {"SI", "System and Information Integrity"},
      {"SR", "Supply Chain Risk Management"},
  }};
  return kFamilies;
}

const Family* find_family(std::string_view id) {
  for (const auto& f : families())
    if (f.id == id) return &f;
  return nullptr;
}

namespace {

// Mirrors data/catalog/nist_800_53_subset.tsv.
constexpr std::string_view kBundledCatalog =
    "AC-2\tAccount Management\n"
    "AC-3\tAccess Enforcement\n"
    "AC-4\tInformation Flow Enforcement\n"
    "AC-5\tSeparation of Duties\n"
    "AC-6\tLeast Privilege\n"
    "AC-7\tUnsuccessful Logon Attempts\n"
    "AC-12\tSession Termination\n"
    "AC-17\tRemote Access\n"
    "AT-2\tLiteracy Training and Awareness\n"
    "AU-2\tEvent Logging\n"
    "AU-3\tContent of Audit Records\n"
    "AU-6\tAudit Record Review, Analysis, and Reporting\n"
    "AU-9\tProtection of Audit Information\n"
    "AU-10\tNon-repudiation\n"
    "AU-12\tAudit Record Generation\n"
    "CA-7\tContinuous Monitoring\n"
    "CM-6\tConfiguration Settings\n"
    "CM-7\tLeast Functionality\n"
    "CP-9\tSystem Backup\n"
    "CP-10\tSystem Recovery and Reconstitution\n"
    "IA-2\tIdentification and Authentication (Organizational Users)\n"
    "IA-5\tAuthenticator Management\n"
    "IA-8\tIdentification and Authentication (Non-Organizational Users)\n"
    "IA-9\tService Identification and Authentication\n"
    "IR-4\tIncident Handling\n"
    "IR-6\tIncident Reporting\n"
    "PE-3\tPhysical Access Control\n"
    "PL-8\tSecurity and Privacy Architectures\n"
    "RA-3\tRisk Assessment\n"
    "RA-5\tVulnerability Monitoring and Scanning\n"
    "SA-8\tSecurity and Privacy Engineering Principles\n"
    "SA-11\tDeveloper Testing and Evaluation\n"
    "SC-5\tDenial-of-Service Protection\n"
    "SC-7\tBoundary Protection\n"
    "SC-8\tTransmission Confidentiality and Integrity\n"
    "SC-12\tCryptographic Key Establishment and Management\n"
    "SC-13\tCryptographic Protection\n"
    "SC-23\tSession Authenticity\n"
    "SC-28\tProtection of Information at Rest\n"
    "SC-39\tProcess Isolation\n"
    "SI-3\tMalicious Code Protection\n"
    "SI-4\tSystem Monitoring\n"
    "SI-7\tSoftware, Firmware, and Information Integrity\n"
    "SI-10\tInformation Input Validation\n"
    "SR-3\tSupply Chain Controls and Processes\n";

}  // namespace

const Catalog& Catalog::bundled() {
  static const Catalog kCatalog = Catalog::parse(kBundledCatalog);
  return kCatalog;
}

Catalog Catalog::parse(std::string_view text) {
  Catalog cat;
  int line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab + 1 >= line.size())
      throw Error(Errc::kSchemaError, "expected CODE<TAB>Title",
                  SourceLoc{line_no, 1});
    auto code = try_normalize_code(line.substr(0, tab));
    if (!code)
      throw Error(Errc::kSchemaError,
                  "bad control code '" + std::string(line.substr(0, tab)) + "'",
                  SourceLoc{line_no, 1});
    for (const auto& e : cat.entries_)
      if (e.code == *code)
        throw Error(Errc::kSchemaError, "duplicate entry " + code->text(),
                    SourceLoc{line_no, 1});
    cat.entries_.push_back({*code, std::string(line.substr(tab + 1))});
  }
  std::sort(cat.entries_.begin(), cat.entries_.end(),
            [](const CatalogEntry& a, const CatalogEntry& b) {
              return a.code < b.code;
            });
  return cat;
}

Catalog Catalog::load(const std::string& path) {
  return parse(read_text_file(path));
}

LookupResult Catalog::lookup(const ControlCode& code) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), code,
      [](const CatalogEntry& e, const ControlCode& c) { return e.code < c; });
  if (it != entries_.end() && it->code == code) return *it;
  if (find_family(code.family)) return KnownFamilyOnly{code.family};
  return UnknownControl{};
}

// ---------------------------------------------------------------------------

const MitigationMap& MitigationMap::standard() {
  static const MitigationMap kStandard = [] {
    MitigationMap m;
    m.rows_ = {
        CodeSet{"IA-2", "SC-12"},  // Spoofing
        CodeSet{"SC-7", "SC-8"},   // Tampering
        CodeSet{"AU-2", "AU-10"},  // Repudiation
        CodeSet{"SC-8", "AC-3"},   // Information disclosure
        CodeSet{"SC-5"},           // Denial of service
        CodeSet{"AC-6"},           // Elevation of privilege
    };
    return m;
  }();
  return kStandard;
}

MitigationMap MitigationMap::parse(std::string_view text) {
  MitigationMap m = standard();
  for (const auto& entry : parse_list_file(text)) {
    auto cat = category_from_string(entry.key);
    if (!cat)
      throw Error(Errc::kSchemaError, "unknown STRIDE category '" + entry.key + "'",
                  SourceLoc{entry.line, 1});
    CodeSet row;
    for (const auto& v : entry.values) {
      auto code = try_normalize_code(v);
      if (!code)
        throw Error(Errc::kSchemaError, "bad control code '" + v + "'",
                    SourceLoc{entry.line, 1});
      row.insert(*code);
    }
    if (row.empty())
      throw Error(Errc::kSchemaError, "mitigation row for " + entry.key + " is empty",
                  SourceLoc{entry.line, 1});
    m.rows_[static_cast<int>(*cat)] = std::move(row);
  }
  return m;
}

MitigationMap MitigationMap::load(const std::string& path) {
  return parse(read_text_file(path));
}

}  // namespace threatforge::nist
