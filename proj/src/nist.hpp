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

// NIST SP 800-53 control identifiers, the bundled catalog subset and the
// default STRIDE category to control mapping.

#ifndef THREATFORGE_NIST_HPP_
#define THREATFORGE_NIST_HPP_

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "category.hpp"

namespace threatforge::nist {

// FAMILY-NUMBER or FAMILY-NUMBER(ENHANCEMENT), e.g. SC-7(3).
struct ControlCode {
  std::string family;  // two uppercase letters
  int number = 0;
  std::optional<int> enhancement;

  std::string text() const;
  ControlCode base() const { return {family, number, std::nullopt}; }

  auto operator<=>(const ControlCode&) const = default;
};

// Throws Error{kNotACode}.
ControlCode normalize_code(std::string_view raw);
std::optional<ControlCode> try_normalize_code(std::string_view raw);

enum class CompareMode { kStrict, kBaseOnly };

// Set of codes under a comparison mode. In base-only mode SC-7(3) and SC-7
// are the same member; the first inserted spelling is kept.
class CodeSet {
 public:
  explicit CodeSet(CompareMode mode = CompareMode::kBaseOnly) : mode_(mode) {}
  CodeSet(std::initializer_list<std::string_view> codes,
          CompareMode mode = CompareMode::kBaseOnly);

  CompareMode mode() const { return mode_; }
  bool insert(const ControlCode& code);
  void insert_all(const CodeSet& other);
  bool contains(const ControlCode& code) const;
  std::size_t size() const { return codes_.size(); }
  bool empty() const { return codes_.empty(); }
  const std::vector<ControlCode>& codes() const { return codes_; }
  auto begin() const { return codes_.begin(); }
  auto end() const { return codes_.end(); }

  std::vector<std::string> texts() const;
  // "IA-2, SC-12"
  std::string joined(std::string_view sep = ", ") const;

  // Throws Error{kModeMismatch} when modes differ.
  std::size_t intersection_size(const CodeSet& other) const;

  friend bool operator==(const CodeSet& a, const CodeSet& b);

 private:
  ControlCode key(const ControlCode& c) const {
    return mode_ == CompareMode::kBaseOnly ? c.base() : c;
  }
  CompareMode mode_;
  std::vector<ControlCode> codes_;  // sorted by key(), unique keys
};

struct Family {
  std::string_view id;
  std::string_view title;
};

// The twenty control families of Rev. 5.
const std::array<Family, 20>& families();
const Family* find_family(std::string_view id);

struct CatalogEntry {
  ControlCode code;
  std::string title;
};
struct KnownFamilyOnly {
  std::string family;
};
struct UnknownControl {};

using LookupResult = std::variant<CatalogEntry, KnownFamilyOnly, UnknownControl>;

class Catalog {
 public:
  // Curated subset shipped with the library.
  static const Catalog& bundled();
  // Line-oriented `CODE<TAB>Title`; `#` comments. Throws kSchemaError.
  static Catalog parse(std::string_view text);
  static Catalog load(const std::string& path);

  LookupResult lookup(const ControlCode& code) const;
  const std::vector<CatalogEntry>& entries() const { return entries_; }

 private:
  std::vector<CatalogEntry> entries_;  // sorted by code
};

inline LookupResult lookup_control(const ControlCode& code,
                                   const Catalog& catalog = Catalog::bundled()) {
  return catalog.lookup(code);
}

// Category -> mitigation controls. Rows for S and T come from worked
// examples; R, I, D, E are seeded from the public catalog.
class MitigationMap {
 public:
  static const MitigationMap& standard();
  // `S = ["IA-2", "SC-12"]` style lines; keys are letters or category names.
  // Rows not mentioned keep their standard value. Throws kSchemaError.
  static MitigationMap parse(std::string_view text);
  static MitigationMap load(const std::string& path);

  const CodeSet& codes(Category c) const {
    return rows_[static_cast<int>(c)];
  }

 private:
  std::array<CodeSet, 6> rows_;
};

inline CodeSet default_mitigation_codes(Category c) {
  return MitigationMap::standard().codes(c);
}

}  // namespace threatforge::nist

#endif  // THREATFORGE_NIST_HPP_
