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

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "stride.hpp"
#include "test_util.hpp"

namespace threatforge::stride {
namespace {

using C = Category;

dfd::Graph bank() {
  return dfd::load(testing::source_path("data/fixtures/bank_account.dfd").string());
}

TEST(RuleTable, StandardRows) {
  const auto& t = RuleTable::standard();
  EXPECT_EQ(applicable_categories(SubjectKind::kProcess, t),
            (CategorySet{C::kSpoofing, C::kTampering, C::kRepudiation,
                         C::kInformationDisclosure, C::kDenialOfService,
                         C::kElevationOfPrivilege}));
  EXPECT_EQ(applicable_categories(SubjectKind::kExternalEntity, t),
            (CategorySet{C::kSpoofing, C::kRepudiation}));
  EXPECT_EQ(applicable_categories(SubjectKind::kDataStore, t),
            (CategorySet{C::kTampering, C::kRepudiation, C::kInformationDisclosure,
                         C::kDenialOfService}));
  EXPECT_EQ(applicable_categories("DataFlow", t),
            (CategorySet{C::kTampering, C::kInformationDisclosure, C::kDenialOfService}));
}

TEST(RuleTable, ShippedFileMatchesStandard) {
  auto t = RuleTable::load(testing::source_path("data/rules/stride_per_element.toml").string());
  for (auto k : {SubjectKind::kExternalEntity, SubjectKind::kProcess, SubjectKind::kDataStore,
                 SubjectKind::kDataFlow})
    EXPECT_EQ(t.row(k), RuleTable::standard().row(k));
}

TEST(RuleTable, EveryCategoryCovered) {
  CategorySet all;
  for (auto k : {SubjectKind::kExternalEntity, SubjectKind::kProcess, SubjectKind::kDataStore,
                 SubjectKind::kDataFlow})
    RuleTable::standard().row(k).for_each([&](Category c) { all.insert(c); });
  EXPECT_EQ(all.size(), 6u);
}

TEST(RuleTable, UnknownKind) {
  try {
    applicable_categories("gateway", RuleTable::standard());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kUnknownKind);
  }
}

TEST(Enumerate, SingleProcess) {
  auto g = dfd::parse("dfd \"M\" {\n  process \"Core Ledger\" {}\n}\n");
  auto f = enumerate_threats(g);
  ASSERT_EQ(f.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(f[i].category, kAllCategories[i]);
    EXPECT_EQ(f[i].subject_id, "Core Ledger");
    EXPECT_NE(f[i].description.find("Core Ledger"), std::string::npos);
  }
}

TEST(Enumerate, BankFixtureCounts) {
  auto f = enumerate_threats(bank());
  ASSERT_EQ(f.size(), 18u);
  std::map<std::string, int> per_subject;
  for (const auto& x : f) ++per_subject[x.subject_id];
  EXPECT_EQ(per_subject["Bank Customer"], 2);
  EXPECT_EQ(per_subject["Open Account"], 6);
  EXPECT_EQ(per_subject["Customer Account DB"], 4);
  EXPECT_EQ(per_subject["Account Request"], 3);
  EXPECT_EQ(per_subject["Account Confirmation"], 3);
  for (const auto& x : f)
    if (x.category == C::kSpoofing) EXPECT_EQ(x.codes, (nist::CodeSet{"IA-2", "SC-12"}));
}

TEST(Enumerate, EmptyGraphInvalid) {
  dfd::Graph g;
  g.title = "Nothing";
  try {
    enumerate_threats(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kInvalidGraph);
  }
}

TEST(Enumerate, CustomTable) {
  auto t = RuleTable::parse("store = [\"T\"]\n");
  auto g = dfd::parse("dfd \"M\" {\n  store \"Vault\" {}\n}\n");
  auto f = enumerate_threats(g, t);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].category, C::kTampering);
}

TEST(RuleTable, RejectsUncoveredCategory) {
  EXPECT_THROW(RuleTable::parse("process = [\"S\"]\n"), Error);
}

TEST(EnumerateProperty, CardinalityAndMembership) {
  std::mt19937_64 rng(99);
  const auto& table = RuleTable::standard();
  for (int i = 0; i < 200; ++i) {
    auto g = testing::random_graph(rng);
    std::map<std::string, SubjectKind> kind_of;
    std::size_t expected = 0;
    for (const auto& e : g.elements) {
      kind_of[e.name] = subject_kind(e.kind);
      expected += table.row(subject_kind(e.kind)).size();
    }
    for (const auto& fl : g.flows) {
      kind_of[fl.name] = SubjectKind::kDataFlow;
      expected += table.row(SubjectKind::kDataFlow).size();
    }
    auto f = enumerate_threats(g, table);
    ASSERT_EQ(f.size(), expected);
    for (const auto& x : f) {
      ASSERT_TRUE(kind_of.count(x.subject_id)) << x.subject_id;
      EXPECT_TRUE(table.row(kind_of[x.subject_id]).contains(x.category));
      EXPECT_FALSE(x.description.empty());
      EXPECT_FALSE(x.codes.empty());
    }
    auto again = enumerate_threats(g, table);
    for (std::size_t j = 0; j < f.size(); ++j) {
      EXPECT_EQ(again[j].description, f[j].description);
      EXPECT_EQ(again[j].mitigation, f[j].mitigation);
      EXPECT_EQ(again[j].codes, f[j].codes);
    }
  }
}

}  // namespace
}  // namespace threatforge::stride
