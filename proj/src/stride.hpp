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

// Deterministic STRIDE-per-element threat enumeration.

#ifndef THREATFORGE_STRIDE_HPP_
#define THREATFORGE_STRIDE_HPP_

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "category.hpp"
#include "dfd.hpp"
#include "nist.hpp"

namespace threatforge::stride {

enum class SubjectKind { kExternalEntity, kProcess, kDataStore, kDataFlow };

SubjectKind subject_kind(dfd::ElementKind kind);
std::string_view subject_kind_name(SubjectKind kind);

class RuleTable {
 public:
  // External entity {S,R}; process {S,T,R,I,D,E}; data store {T,R,I,D};
  // data flow {T,I,D}.
  static const RuleTable& standard();
  // `process = ["S","T"]` lines; keys external|process|store|flow (long
  // forms external_entity, data_store, data_flow also accepted). Rows not
  // mentioned keep their standard value. Throws kSchemaError.
  static RuleTable parse(std::string_view text);
  static RuleTable load(const std::string& path);

  const CategorySet& row(SubjectKind kind) const {
    return rows_[static_cast<int>(kind)];
  }

 private:
  std::array<CategorySet, 4> rows_;
};

CategorySet applicable_categories(SubjectKind kind, const RuleTable& table);
// Throws Error{kUnknownKind} for names outside the table domain.
CategorySet applicable_categories(std::string_view kind, const RuleTable& table);

struct ThreatFinding {
  Category category = Category::kSpoofing;
  std::string subject_id;  // empty for findings parsed from model output
  std::string description;
  std::string mitigation;
  nist::CodeSet codes;
};

// One finding per (subject, applicable category), elements before flows in
// declaration order, categories in S,T,R,I,D,E order. Throws kInvalidGraph.
std::vector<ThreatFinding> enumerate_threats(
    const dfd::Graph& graph, const RuleTable& table = RuleTable::standard(),
    const nist::MitigationMap& mitigations = nist::MitigationMap::standard());

}  // namespace threatforge::stride

#endif  // THREATFORGE_STRIDE_HPP_
