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

#include <random>

#include "dfd.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace threatforge::dfd {
namespace {

Graph bank() { return load(testing::source_path("data/fixtures/bank_account.dfd").string()); }

std::size_t count_of(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

Errc parse_error(std::string_view src) {
  try {
    parse(src);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for:\n" << src;
  return Errc::kInternal;
}

TEST(DfdParse, Minimal) {
  auto g = parse("dfd \"M\" {\n  process \"P\" {}\n}\n");
  EXPECT_EQ(g.title, "M");
  ASSERT_EQ(g.elements.size(), 1u);
  EXPECT_EQ(g.elements[0].kind, ElementKind::kProcess);
  EXPECT_TRUE(g.flows.empty());
}

TEST(DfdParse, BankFixture) {
  auto g = bank();
  EXPECT_EQ(g.title, "Bank Account System");
  ASSERT_EQ(g.elements.size(), 3u);
  EXPECT_EQ(g.flows.size(), 2u);
  EXPECT_EQ(g.elements[0].kind, ElementKind::kExternalEntity);
  EXPECT_EQ(g.elements[1].attributes.running_as, RunningAs::kNetworkService);
  EXPECT_EQ(g.elements[1].attributes.isolation, Isolation::kAppContainer);
  EXPECT_EQ(g.elements[2].kind, ElementKind::kDataStore);
  ASSERT_NE(g.boundary_of("Bank Customer"), nullptr);
  EXPECT_EQ(g.boundary_of("Bank Customer")->name, "Internet");
  EXPECT_EQ(g.flows[0].crosses, std::vector<std::string>{"Internet"});
}

TEST(DfdParse, Errors) {
  EXPECT_EQ(parse_error("dfd \"X\" {\n process \"P\" {}\n flow \"F\" from \"P\" to \"Q\"\n}"),
            Errc::kUnknownReference);
  EXPECT_EQ(parse_error("dfd \"X\" {\n process \"P\" {}\n store \"P\" {}\n}"),
            Errc::kDuplicateId);
  EXPECT_EQ(parse_error("dfd \"X\" {\n process \"P\" { colour = red }\n}"),
            Errc::kUnknownAttribute);
  EXPECT_EQ(parse_error("dfd \"X\" {\n process \"P\" { isolation = sandbox }\n}"),
            Errc::kUnknownAttribute);
  EXPECT_EQ(parse_error("dfd \"X\" {\n process \"P\" {}\n"), Errc::kSyntaxError);
  EXPECT_EQ(parse_error("dfd \"X\" {\n widget \"P\" {}\n}"), Errc::kSyntaxError);
}

TEST(DfdParse, SyntaxErrorCarriesPosition) {
  try {
    parse("dfd \"X\" {\n  process \"P\" {}\n  flow \"F\" frm \"P\" to \"P\"\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kSyntaxError);
    ASSERT_TRUE(e.loc().has_value());
    EXPECT_EQ(e.loc()->line, 3);
    EXPECT_GT(e.loc()->col, 0);
  }
}

TEST(DfdParse, CommentsIgnored) {
  auto g = parse("# leading\ndfd \"X\" { # trailing\n  process \"P\" {} # more\n}\n");
  EXPECT_EQ(g.elements.size(), 1u);
}

TEST(DfdValidate, ValidFixture) { EXPECT_TRUE(validate(bank()).empty()); }

TEST(DfdValidate, BoundaryOverlap) {
  auto g = bank();
  g.boundaries.push_back({"Branch", {"Bank Customer"}});
  auto d = validate(g);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].kind, DiagnosticKind::kBoundaryOverlap);
  EXPECT_EQ(d[0].subject, "Bank Customer");
}

TEST(DfdValidate, DanglingSink) {
  auto g = bank();
  g.flows[1].sink = "Nowhere";
  auto d = validate(g);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].kind, DiagnosticKind::kUnknownReference);
  EXPECT_EQ(d[0].subject, "Account Confirmation");
}

TEST(DfdValidate, OrderedAndAttributed) {
  Graph g;
  g.elements.push_back({"B", ElementKind::kProcess, {}});
  g.elements.push_back({"A", ElementKind::kProcess, {}});
  g.boundaries.push_back({"Z1", {"A"}});
  g.boundaries.push_back({"Z2", {"A", "B"}});
  g.flows.push_back({"F2", "A", "A", {}, false});
  g.flows.push_back({"F1", "A", "C", {}, false});
  auto d = validate(g);
  ASSERT_EQ(d.size(), 4u);
  EXPECT_EQ(d[0].kind, DiagnosticKind::kEmptyTitle);
  EXPECT_EQ(d[1].kind, DiagnosticKind::kBoundaryOverlap);
  EXPECT_EQ(d[2].subject, "F1");
  EXPECT_EQ(d[3].subject, "F2");
  EXPECT_EQ(d[3].kind, DiagnosticKind::kSelfLoop);
  for (const auto& x : d) EXPECT_FALSE(x.subject.empty());
}

TEST(DfdRender, OneProcess) {
  auto g = parse("dfd \"M\" {\n  process \"Core Ledger\" {}\n}\n");
  auto d = render_description(g);
  EXPECT_EQ(count_of(d.text, "Process \""), 1u);
  EXPECT_GT(d.token_count, 0u);
  EXPECT_EQ(d.token_count, count_tokens(d.text));
}

TEST(DfdRender, BankMentionsStoreOnce) {
  auto d = render_description(bank());
  EXPECT_EQ(count_of(d.text, "Customer Account DB"), 1u);
  EXPECT_NE(d.text.find("runs as network service"), std::string::npos);
  EXPECT_EQ(render_description(bank()).text, d.text);
}

TEST(DfdRender, InvalidGraphRejected) {
  Graph g;
  g.title = "Empty";
  try {
    render_description(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kInvalidGraph);
  }
}

TEST(DfdRender, TokenCount) {
  EXPECT_EQ(count_tokens(""), 0u);
  EXPECT_EQ(count_tokens("  a  b\tc\n"), 3u);
}

TEST(DfdProperty, SerializeParseRoundTrip) {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 300; ++i) {
    auto g = testing::random_graph(rng);
    ASSERT_TRUE(validate(g).empty()) << serialize(g);
    auto text = serialize(g);
    auto back = parse(text);
    EXPECT_EQ(back, g) << text;
    EXPECT_EQ(serialize(back), text);
    EXPECT_EQ(render_description(back).text, render_description(g).text);
  }
}

}  // namespace
}  // namespace threatforge::dfd
