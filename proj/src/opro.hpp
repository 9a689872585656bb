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

// Optimization by prompting: an optimizer model proposes instructions from a
// scored trajectory and a scorer model grades each proposal on task samples.

#ifndef THREATFORGE_OPRO_HPP_
#define THREATFORGE_OPRO_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dataset.hpp"
#include "error.hpp"
#include "gateway.hpp"
#include "parser.hpp"
#include "prompt.hpp"

namespace threatforge::opro {

enum class Metric { kAccuracy, kPrecision, kRecall };

std::string_view metric_name(Metric m);
// Throws Error{kUsage}.
Metric metric_from_name(std::string_view name);

struct DecodePolicy {
  int max_tokens;
  double temperature;
  int num_decodes = 1;
  int batch = 1;
};

struct OproConfig {
  DecodePolicy scorer{1024, 0.0};
  DecodePolicy optimizer{512, 1.0};
  Metric metric = Metric::kPrecision;
  int max_steps = 20;
  int patience = 5;
  int top_k = 8;
  std::size_t num_exemplars = 3;
  std::string scorer_model = "gpt-3.5-turbo";
  std::string optimizer_model = "gpt-3.5-turbo";
};

// Throws Error{kInvalidArgument}.
void validate_config(const OproConfig& config);

struct PromptCandidate {
  int step = 0;
  std::string instruction;
  double score = 0;
};

struct OproTrajectory {
  std::vector<PromptCandidate> history;  // append-only
  int top_k = 8;

  const PromptCandidate* best() const;
  // Best score after each step; monotone non-decreasing.
  std::vector<double> best_so_far() const;
};

std::string format_score(double score);

std::string build_meta_prompt(const OproTrajectory& trajectory,
                              const std::vector<prompt::Exemplar>& task_exemplars,
                              Metric metric = Metric::kPrecision);

// Text in the first pair of square brackets, else the trimmed reply.
std::string extract_proposal(std::string_view reply);

// Mean of the metric over samples; unparseable replies score 0.
// Throws Error{kEmptyInput} and backend errors.
double score_candidate(std::string_view instruction,
                       const std::vector<dataset::BenchmarkSample>& samples,
                       llm::Gateway& scorer, Metric metric,
                       const OproConfig& config = {},
                       const parse::CueConfig& cues = {});

struct OptimizeResult {
  OproTrajectory trajectory;
  std::optional<Error> error;  // set when the loop aborted early
};

// Continues `resume` when given; its first record must carry the seed.
OptimizeResult optimize(std::string_view seed_instruction,
                        const std::vector<dataset::BenchmarkSample>& samples,
                        const OproConfig& config, llm::Gateway& scorer,
                        llm::Gateway& optimizer,
                        const std::optional<OproTrajectory>& resume = std::nullopt);

struct TrajectoryHeader {
  Metric metric = Metric::kPrecision;
  std::string scored_on = "train";
  std::size_t n_samples = 0;
  std::uint64_t split_seed = 0;
  int max_steps = 20;
  int patience = 5;
  int top_k = 8;
};

// First line is the header; each further line is {step, instruction, score}.
std::string trajectory_to_jsonl(const TrajectoryHeader& header,
                                const OproTrajectory& trajectory);
// Throws Error{kSchemaError}.
std::pair<TrajectoryHeader, OproTrajectory> trajectory_from_jsonl(std::string_view text);

}  // namespace threatforge::opro

#endif  // THREATFORGE_OPRO_HPP_
