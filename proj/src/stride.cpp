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

#include "stride.hpp"

#include <cctype>

#include "error.hpp"
#include "list_file.hpp"

namespace threatforge::stride {

SubjectKind subject_kind(dfd::ElementKind kind) {
  switch (kind) {
    case dfd::ElementKind::kExternalEntity: return SubjectKind::kExternalEntity;
    case dfd::ElementKind::kProcess: return SubjectKind::kProcess;
    case dfd::ElementKind::kDataStore: return SubjectKind::kDataStore;
  }
  return SubjectKind::kProcess;
}

std::string_view subject_kind_name(SubjectKind kind) {
  switch (kind) {
    case SubjectKind::kExternalEntity: return "external";
    case SubjectKind::kProcess: return "process";
    case SubjectKind::kDataStore: return "store";
    case SubjectKind::kDataFlow: return "flow";
  }
  return "process";
}

namespace {

std::optional<SubjectKind> kind_from_key(std::string_view key) {
  if (key == "external" || key == "external_entity" || key == "ExternalEntity")
    return SubjectKind::kExternalEntity;
  if (key == "process" || key == "Process") return SubjectKind::kProcess;
  if (key == "store" || key == "data_store" || key == "DataStore")
    return SubjectKind::kDataStore;
  if (key == "flow" || key == "data_flow" || key == "DataFlow")
    return SubjectKind::kDataFlow;
  return std::nullopt;
}

}  // namespace

const RuleTable& RuleTable::standard() {
  static const RuleTable kTable = [] {
    using C = Category;
    RuleTable t;
    t.rows_ = {
        CategorySet{C::kSpoofing, C::kRepudiation},
        CategorySet{C::kSpoofing, C::kTampering, C::kRepudiation,
                    C::kInformationDisclosure, C::kDenialOfService,
                    C::kElevationOfPrivilege},
        CategorySet{C::kTampering, C::kRepudiation, C::kInformationDisclosure,
                    C::kDenialOfService},
        CategorySet{C::kTampering, C::kInformationDisclosure,
                    C::kDenialOfService},
    };
    return t;
  }();
  return kTable;
}

RuleTable RuleTable::parse(std::string_view text) {
  RuleTable t = standard();
  for (const auto& entry : parse_list_file(text)) {
    auto kind = kind_from_key(entry.key);
    if (!kind)
      throw Error(Errc::kSchemaError, "unknown element kind '" + entry.key + "'",
                  SourceLoc{entry.line, 1});
    CategorySet row;
    for (const auto& v : entry.values) {
      auto c = category_from_string(v);
      if (!c)
        throw Error(Errc::kSchemaError, "unknown STRIDE category '" + v + "'",
                    SourceLoc{entry.line, 1});
      row.insert(*c);
    }
    if (row.empty())
      throw Error(Errc::kSchemaError, "rule row '" + entry.key + "' is empty",
                  SourceLoc{entry.line, 1});
    t.rows_[static_cast<int>(*kind)] = row;
  }
  for (auto c : kAllCategories) {
    bool used = false;
    for (const auto& row : t.rows_) used = used || row.contains(c);
    if (!used)
      throw Error(Errc::kSchemaError,
                  "category " + std::string(category_name(c)) +
                      " does not appear in any rule row");
  }
  return t;
}

RuleTable RuleTable::load(const std::string& path) {
  return parse(read_text_file(path));
}

CategorySet applicable_categories(SubjectKind kind, const RuleTable& table) {
  return table.row(kind);
}

CategorySet applicable_categories(std::string_view kind, const RuleTable& table) {
  auto k = kind_from_key(kind);
  if (!k) throw Error(Errc::kUnknownKind, "unknown kind '" + std::string(kind) + "'");
  return table.row(*k);
}

namespace {

std::string describe(Category c, std::string_view label, std::string_view name) {
  std::string subject = "the ";
  for (char ch : label)
    subject.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  subject += " \"" + std::string(name) + "\"";
  switch (c) {
    case Category::kSpoofing:
      return "An attacker could impersonate " + subject +
             " to gain unauthorized access to the system.";
    case Category::kTampering:
      return "An attacker could modify data handled by " + subject +
             " on disk, on the network or in memory.";
    case Category::kRepudiation:
      return "A user of " + subject +
             " could deny having performed an action because its activity is "
             "not reliably attributed.";
    case Category::kInformationDisclosure:
      return "Sensitive banking data handled by " + subject +
             " could be exposed to parties that are not authorized to read it.";
    case Category::kDenialOfService:
      return "An attacker could exhaust the resources " + subject +
             " depends on and make it unavailable to customers.";
    case Category::kElevationOfPrivilege:
      return "An attacker could abuse " + subject +
             " to perform actions beyond the privileges granted to them.";
  }
  return {};
}

std::string_view mitigate(Category c) {
  switch (c) {
    case Category::kSpoofing:
      return "Enforce strong authentication such as multi-factor "
             "authentication and manage the cryptographic keys behind "
             "credentials and certificates.";
    case Category::kTampering:
      return "Protect system boundaries and transmitted data with integrity "
             "checks and authenticated channels.";
    case Category::kRepudiation:
      return "Record security-relevant events in protected audit logs and "
             "bind every action to an authenticated identity.";
    case Category::kInformationDisclosure:
      return "Encrypt data in transit and enforce access control on every "
             "read of sensitive records.";
    case Category::kDenialOfService:
      return "Apply rate limiting, resource quotas and service-level "
             "protections against resource exhaustion.";
    case Category::kElevationOfPrivilege:
      return "Grant each component the least privilege it needs and verify "
             "authorization on every request.";
  }
  return {};
}

}  // namespace

std::vector<ThreatFinding> enumerate_threats(const dfd::Graph& graph,
                                             const RuleTable& table,
                                             const nist::MitigationMap& mitigations) {
  auto diags = dfd::validate(graph);
  if (!diags.empty())
    throw Error(Errc::kInvalidGraph,
                "cannot enumerate threats: " + diags.front().message);

  std::vector<ThreatFinding> out;
  auto emit = [&](SubjectKind kind, std::string_view label,
                  const std::string& name) {
    table.row(kind).for_each([&](Category c) {
      ThreatFinding f;
      f.category = c;
      f.subject_id = name;
      f.description = describe(c, label, name);
      f.mitigation = std::string(mitigate(c));
      f.codes = mitigations.codes(c);
      out.push_back(std::move(f));
    });
  };
  for (const auto& e : graph.elements)
    emit(subject_kind(e.kind), dfd::kind_label(e.kind), e.name);
  for (const auto& f : graph.flows) emit(SubjectKind::kDataFlow, "Data flow", f.name);
  return out;
}

}  // namespace threatforge::stride
