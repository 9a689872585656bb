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

#include <json.hpp>

#include "dataset.hpp"
#include "pipeline.hpp"
#include "test_util.hpp"

namespace threatforge::pipeline {
namespace {

std::string seq(const std::string& r) {
  return nlohmann::json{{"mode", "seq"}, {"response", r}}.dump() + "\n";
}

llm::Gateway gateway(const std::string& script) {
  return llm::Gateway(std::make_unique<llm::MockBackend>(llm::MockScript::parse(script)), {}, 1);
}

std::string spoofing() {
  return testing::read_file(testing::source_path("tests/fixtures/spoofing_paragraph.txt"));
}

TEST(RunSample, SpoofingReply) {
  auto g = gateway(seq(spoofing()));
  auto run = run_sample({"bank", "A bank."}, g, RunOptions{});
  ASSERT_EQ(run.parsed.findings.size(), 1u);
  EXPECT_EQ(run.parsed.findings[0].category, Category::kSpoofing);
  EXPECT_EQ(run.parsed.findings[0].codes, (nist::CodeSet{"IA-2", "SC-12"}));
  auto j = nlohmann::json::parse(runs_to_json({run}, RunOptions{}, "mock"));
  EXPECT_EQ(j["prompt"], "initial");
  EXPECT_EQ(j["backend"], "mock");
  EXPECT_EQ(j["samples"][0]["findings"][0]["codes"], nlohmann::json({"IA-2", "SC-12"}));
  EXPECT_TRUE(j["samples"][0]["flags"].empty());
  EXPECT_EQ(j["samples"][0]["completion"], spoofing());
}

TEST(RunSample, EmptyReplyFlagged) {
  auto g = gateway(seq(""));
  auto run = run_sample({"x", "A bank."}, g, RunOptions{});
  EXPECT_TRUE(run.parsed.findings.empty());
  auto j = nlohmann::json::parse(runs_to_json({run}, RunOptions{}, "mock"));
  EXPECT_EQ(j["samples"][0]["flags"], nlohmann::json({"empty_output"}));
  EXPECT_NE(runs_table({run}).find("(no findings)"), std::string::npos);
}

TEST(RunInputs, AllOrNothing) {
  auto g = gateway(seq(spoofing()));
  try {
    run_inputs({{"a", "one"}, {"b", "two"}}, g, RunOptions{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kScriptExhausted);
  }
}

TEST(Predictions, Errors) {
  EXPECT_THROW(predictions_from_json("[]"), Error);
  EXPECT_THROW(predictions_from_json("{\"samples\": [{\"id\": 1}]}"), Error);
  try {
    predictions_from_json(R"({"samples":[{"id":"a","findings":[]},{"id":"a","findings":[]}]})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kDuplicateId);
  }
}

TEST(EvaluatePredictions, UnknownIdIsSchemaError) {
  auto truth = dataset::load_samples(testing::source_path("data/datasets/synthetic10.json"));
  auto preds = predictions_from_json(R"({"samples":[{"id":"nope","findings":[]}]})");
  try {
    evaluate_predictions(preds, truth, eval::SimilarityProvider::lexical());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kSchemaError);
  }
}

TEST(EvaluatePredictions, OracleAnswersScorePerfectly) {
  auto truth = dataset::load_samples(testing::source_path("data/datasets/synthetic10.json"));
  std::string script;
  std::vector<RunInput> inputs;
  for (const auto& s : truth) {
    script += seq(parse::format_findings(s.ground_truth));
    inputs.push_back({s.id, s.description});
  }
  auto g = gateway(script);
  auto runs = run_inputs(inputs, g, RunOptions{});
  auto preds = predictions_from_json(runs_to_json(runs, RunOptions{}, "mock"));
  auto report = evaluate_predictions(preds, truth, eval::SimilarityProvider::lexical());
  EXPECT_EQ(report.n_samples, 10u);
  EXPECT_EQ(report.macro.precision, 1.0);
  EXPECT_EQ(report.macro.recall, 1.0);
  EXPECT_EQ(report.macro.accuracy, 1.0);
  EXPECT_NEAR(report.macro.similarity, 1.0, 1e-12);
}

TEST(WriteFiles, CreatesDirectory) {
  auto dir = testing::temp_dir("write-files") / "nested";
  write_files(dir, {{"a.txt", "A"}, {"b.txt", "B"}});
  EXPECT_EQ(testing::read_file(dir / "a.txt"), "A");
  EXPECT_EQ(testing::read_file(dir / "b.txt"), "B");
}

TEST(FindingsTable, Columns) {
  stride::ThreatFinding f;
  f.subject_id = "Vault";
  f.description = std::string(100, 'x');
  f.codes = nist::CodeSet{"SC-5"};
  f.category = Category::kDenialOfService;
  auto t = findings_table({f});
  EXPECT_NE(t.find("Denial of Service"), std::string::npos);
  EXPECT_NE(t.find("Vault"), std::string::npos);
  EXPECT_NE(t.find("..."), std::string::npos);
}

}  // namespace
}  // namespace threatforge::pipeline
