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

// Drives the installed CLI binary as a subprocess.

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "test_server.hpp"
#include "test_util.hpp"

namespace threatforge::testing {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string src(const std::string& rel) { return "'" + source_path(rel).string() + "'"; }
std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

std::string files_in(const fs::path& dir) {
  std::string all;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) all += read_file(e.path());
  return all;
}

TEST(Cli, VersionAndUsageErrors) {
  auto v = run_cli("--version");
  EXPECT_EQ(v.status, 0);
  EXPECT_NE(v.out.find("0.1.0"), std::string::npos);
  EXPECT_EQ(run_cli("").status, 2);
  EXPECT_EQ(run_cli("run --no-such-flag").status, 2);
  EXPECT_EQ(run_cli("frobnicate").status, 2);
  EXPECT_EQ(run_cli("oracle enumerate /nonexistent.dfd").status, 4);
}

TEST(Cli, SchemaErrorsExitFour) {
  auto dir = temp_dir("cli-schema");
  write_file(dir / "bad.dfd", "dfd \"X\" {\n  process \"P\" {\n}\n");
  EXPECT_EQ(run_cli("model validate " + q(dir / "bad.dfd")).status, 4);
  EXPECT_EQ(run_cli("oracle enumerate " + q(dir / "bad.dfd")).status, 4);
  write_file(dir / "ds.json", "{\"samples\": 3}");
  EXPECT_EQ(run_cli("dataset split --dataset " + q(dir / "ds.json")).status, 4);
}

TEST(Cli, ExhaustedMockExitsThreeWithoutReport) {
  auto dir = temp_dir("cli-exhausted");
  write_file(dir / "empty.jsonl", "");
  write_file(dir / "in.txt", "An online bank.");
  auto r = run_cli("run --backend mock:" + q(dir / "empty.jsonl") + " --input " +
                   q(dir / "in.txt") + " --out " + q(dir / "out"));
  EXPECT_EQ(r.status, 3);
  EXPECT_FALSE(fs::exists(dir / "out" / "findings.json"));
  EXPECT_FALSE(fs::exists(dir / "out" / "findings.txt"));
}

TEST(Cli, UnreachableBackendExitsThreeWithoutReport) {
  auto dir = temp_dir("cli-unreachable");
  write_file(dir / "in.txt", "An online bank.");
  std::string url = "http://127.0.0.1:" + std::to_string(closed_port());
  ::setenv("THREATFORGE_API_KEY", "unused", 1);
  auto r = run_cli("run --backend http:" + url + " --input " + q(dir / "in.txt") + " --out " +
                   q(dir / "out"));
  ::unsetenv("THREATFORGE_API_KEY");
  EXPECT_EQ(r.status, 3);
  EXPECT_FALSE(fs::exists(dir / "out" / "findings.json"));
}

TEST(Cli, MissingApiKeyExitsThree) {
  auto dir = temp_dir("cli-nokey");
  write_file(dir / "in.txt", "An online bank.");
  ::unsetenv("THREATFORGE_API_KEY");
  auto r = run_cli("run --backend http:http://127.0.0.1:1 --input " + q(dir / "in.txt") + " --out " +
                   q(dir / "out"));
  EXPECT_EQ(r.status, 3);
}

TEST(Cli, EmptyCompletionIsFlaggedNotFatal) {
  auto dir = temp_dir("cli-empty");
  write_file(dir / "s.jsonl", "{\"mode\":\"seq\",\"response\":\"\"}\n");
  write_file(dir / "in.txt", "An online bank.");
  auto r = run_cli("run --backend mock:" + q(dir / "s.jsonl") + " --input " + q(dir / "in.txt") +
                   " --out " + q(dir / "out") + " --format json");
  ASSERT_EQ(r.status, 0);
  auto doc = json::parse(read_file(dir / "out" / "findings.json"));
  ASSERT_EQ(doc["samples"].size(), 1u);
  EXPECT_EQ(doc["samples"][0]["flags"], json::array({"empty_output"}));
  EXPECT_TRUE(doc["samples"][0]["findings"].empty());
}

TEST(Cli, SpoofingParagraphGivesOneFinding) {
  auto dir = temp_dir("cli-spoof");
  json line = {{"mode", "seq"},
               {"response", read_file(source_path("tests/fixtures/spoofing_paragraph.txt"))}};
  write_file(dir / "s.jsonl", line.dump() + "\n");
  write_file(dir / "in.txt", "An online bank with branch kiosks.");
  auto r = run_cli("run --backend mock:" + q(dir / "s.jsonl") + " --input " + q(dir / "in.txt") +
                   " --out " + q(dir / "out"));
  ASSERT_EQ(r.status, 0);
  auto doc = json::parse(read_file(dir / "out" / "findings.json"));
  const auto& findings = doc["samples"][0]["findings"];
  ASSERT_EQ(findings.size(), 1u);
  EXPECT_EQ(findings[0]["category"], "Spoofing");
  EXPECT_EQ(findings[0]["codes"], json::array({"IA-2", "SC-12"}));
}

TEST(Cli, OracleEnumerateBankAccount) {
  auto r = run_cli("oracle enumerate " + src("data/fixtures/bank_account.dfd") + " --format json");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(json::parse(r.out).size(), 18u);
  EXPECT_EQ(run_cli("oracle enumerate " + src("data/fixtures/bank_account.dfd")).out,
            run_cli("oracle enumerate " + src("data/fixtures/bank_account.dfd")).out);
}

TEST(Cli, ModelAndPromptCommands) {
  auto v = run_cli("model validate " + src("data/fixtures/bank_account.dfd"));
  EXPECT_EQ(v.status, 0);
  auto r = run_cli("model render " + src("data/fixtures/bank_account.dfd"));
  ASSERT_EQ(r.status, 0);
  EXPECT_FALSE(r.out.empty());
  auto p = run_cli("prompt build --dfd " + src("data/fixtures/bank_account.dfd"));
  ASSERT_EQ(p.status, 0);
  EXPECT_NE(p.out.find(r.out.substr(0, 40)), std::string::npos);
  auto dir = temp_dir("cli-prompt");
  write_file(dir / "empty.txt", "");
  EXPECT_EQ(run_cli("prompt build --question-file " + q(dir / "empty.txt")).status, 2);
}

TEST(Cli, RunAndEvalAreDeterministic) {
  auto dir = temp_dir("cli-e2e");
  std::string run = "run --backend mock:" + src("data/e2e/initial/transcripts.jsonl") +
                    " --dataset " + src("data/e2e/initial/truth.json") + " --out ";
  ASSERT_EQ(run_cli(run + q(dir / "a")).status, 0);
  ASSERT_EQ(run_cli(run + q(dir / "b")).status, 0);
  EXPECT_EQ(files_in(dir / "a"), files_in(dir / "b"));

  std::string eval = "eval --truth " + src("data/e2e/initial/truth.json") + " --pred " +
                     q(dir / "a" / "findings.json") + " --format json --out ";
  auto e1 = run_cli(eval + q(dir / "ea"));
  auto e2 = run_cli(eval + q(dir / "eb"));
  ASSERT_EQ(e1.status, 0);
  EXPECT_EQ(e1.out, e2.out);
  EXPECT_FALSE(files_in(dir / "ea").empty());
  EXPECT_EQ(files_in(dir / "ea"), files_in(dir / "eb"));
  auto report = json::parse(e1.out);
  EXPECT_NEAR(report["macro"]["precision"].get<double>(), 0.35, 1e-9);
  EXPECT_NEAR(report["macro"]["recall"].get<double>(), 0.27, 1e-9);
  EXPECT_NEAR(report["macro"]["accuracy"].get<double>(), 0.17, 1e-9);
}

TEST(Cli, DatasetCommandsAreDeterministic) {
  auto dir = temp_dir("cli-dataset");
  for (const char* name : {"a", "b"}) {
    fs::path d = dir / name;
    ASSERT_EQ(run_cli("dataset synth --count 50 --seed 3 --out " + q(d / "ds.json")).status, 0);
    ASSERT_EQ(run_cli("dataset split --dataset " + q(d / "ds.json") + " --seed 7 --out " +
                      q(d / "split.json"))
                  .status,
              0);
    ASSERT_EQ(run_cli("dataset export-finetune --dataset " + q(d / "ds.json") + " --split " +
                      q(d / "split.json") + " --out " + q(d / "ft"))
                  .status,
              0);
  }
  EXPECT_EQ(files_in(dir / "a"), files_in(dir / "b"));
  auto manifest = json::parse(read_file(dir / "a" / "ft" / "manifest.json"));
  EXPECT_EQ(manifest["split"]["train"], 40);
  EXPECT_EQ(manifest["split"]["test"], 10);
  EXPECT_EQ(run_cli("dataset export-finetune --dataset " + q(dir / "a" / "ds.json") +
                    " --rank 0 --out " + q(dir / "bad"))
                .status,
            2);
}

TEST(Cli, PromptOptimizeReproducesPlantedRun) {
  auto dir = temp_dir("cli-opro");
  std::string cmd = "prompt optimize --backend mock:" + src("data/scripts/opro.jsonl") +
                    " --dataset " + src("data/opro/dataset.json") + " --metric precision --out ";
  auto a = run_cli(cmd + q(dir / "a.jsonl"));
  auto b = run_cli(cmd + q(dir / "b.jsonl"));
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(read_file(dir / "a.jsonl"), read_file(dir / "b.jsonl"));
  EXPECT_NE(a.out.find("0.57"), std::string::npos) << a.out;
}

TEST(Cli, ApiKeyNeverWritten) {
  const std::string secret = "sk-live-0a1b2c3d4e5f";
  auto dir = temp_dir("cli-secret");
  std::string seen_auth;
  TestServer server("/chat/completions", [&](const httplib::Request& rq, httplib::Response& rs) {
    seen_auth = rq.get_header_value("Authorization");
    json body = {{"choices", {{{"message", {{"role", "assistant"},
                                            {"content", "Spoofing: x. NIST: IA-2"}}}}}}};
    rs.set_content(body.dump(), "application/json");
  });
  write_file(dir / "in.txt", "An online bank.");
  ::setenv("THREATFORGE_API_KEY", secret.c_str(), 1);
  auto r = run_cli("run --backend http:" + server.url() + " --input " + q(dir / "in.txt") +
                   " --out " + q(dir / "out") + " --format json");
  ::unsetenv("THREATFORGE_API_KEY");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(seen_auth, "Bearer " + secret);
  EXPECT_EQ(r.out.find(secret), std::string::npos);
  EXPECT_EQ(files_in(dir / "out").find(secret), std::string::npos);
}

}  // namespace
}  // namespace threatforge::testing
