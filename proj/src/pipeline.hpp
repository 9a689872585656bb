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

// End-to-end h(X): prompt, chat completion, parse, report; plus evaluation of
// saved prediction files against a benchmark dataset.

#ifndef THREATFORGE_PIPELINE_HPP_
#define THREATFORGE_PIPELINE_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dataset.hpp"
#include "eval.hpp"
#include "gateway.hpp"
#include "parser.hpp"
#include "prompt.hpp"

namespace threatforge::pipeline {

struct RunOptions {
  prompt::PromptTemplate tmpl = prompt::build_initial_prompt();
  std::string prompt_label = "initial";
  int max_tokens = 1024;
  double temperature = 0.0;
  std::string model_id = "gpt-3.5-turbo";
  parse::CueConfig cues;
};

struct RunInput {
  std::string id;
  std::string description;
};

struct SampleRun {
  std::string id;
  std::string completion;
  parse::ParsedOutput parsed;
};

SampleRun run_sample(const RunInput& input, llm::Gateway& gateway,
                     const RunOptions& options);

// All-or-nothing: the first backend error propagates and no runs are kept.
std::vector<SampleRun> run_inputs(const std::vector<RunInput>& inputs,
                                  llm::Gateway& gateway, const RunOptions& options);

std::string runs_to_json(const std::vector<SampleRun>& runs, const RunOptions& options,
                         std::string_view backend_kind);
std::string runs_table(const std::vector<SampleRun>& runs);

// One row per finding: index, subject, category, codes, threat.
std::string findings_table(const std::vector<stride::ThreatFinding>& findings);

struct Prediction {
  std::string id;
  parse::ParsedOutput parsed;
};

// Reads the "samples" array of a findings report. Throws Error{kSchemaError}.
std::vector<Prediction> predictions_from_json(std::string_view json_text);

// Scores every prediction against the sample with the same id.
// Throws Error{kSchemaError} for ids missing from the truth set.
eval::EvalReport evaluate_predictions(const std::vector<Prediction>& predictions,
                                      const std::vector<dataset::BenchmarkSample>& truth,
                                      const eval::SimilarityProvider& provider,
                                      nist::CompareMode mode = nist::CompareMode::kBaseOnly);

// Writes each (file name, content) under dir after creating it.
// Throws Error{kIoError}.
void write_files(const std::filesystem::path& dir,
                 const std::vector<std::pair<std::string, std::string>>& files);

}  // namespace threatforge::pipeline

#endif  // THREATFORGE_PIPELINE_HPP_
