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

// Benchmark samples, deterministic splits, synthetic generation, fine-tune
// export and LoRA arithmetic.

#ifndef THREATFORGE_DATASET_HPP_
#define THREATFORGE_DATASET_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "dfd.hpp"
#include "nist.hpp"
#include "stride.hpp"

namespace threatforge::dataset {

struct BenchmarkSample {
  std::string id;
  std::string description;
  std::optional<std::string> dfd;  // DSL source
  std::vector<stride::ThreatFinding> ground_truth;
};

// JSON array of {id, description, dfd?, ground_truth: [...]}.
// Throws Error{kSchemaError | kDuplicateId | kIoError}.
std::vector<BenchmarkSample> parse_samples(std::string_view json_text);
std::vector<BenchmarkSample> load_samples(const std::filesystem::path& path);
std::string samples_to_json(const std::vector<BenchmarkSample>& samples);
void write_samples(const std::vector<BenchmarkSample>& samples,
                   const std::filesystem::path& path);

// Finding records shared by datasets and prediction files:
// {category, subject?, threat, mitigation, codes}.
std::string findings_to_json(const std::vector<stride::ThreatFinding>& findings);
std::vector<stride::ThreatFinding> findings_from_json(std::string_view json_text);

// Unbiased draw from [0, n) using raw engine output; stable across standard
// library implementations.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

struct SplitSpec {
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
  std::uint64_t seed = 0;

  bool operator==(const SplitSpec&) const = default;
};

std::size_t train_size(std::size_t n);

// Throws Error{kTooFew} for fewer than two samples.
SplitSpec split_dataset(const std::vector<BenchmarkSample>& samples, std::uint64_t seed);

std::string split_to_json(const SplitSpec& split);
SplitSpec split_from_json(std::string_view json_text);
// Throws Error{kSchemaError} unless the split partitions the sample ids.
void check_split(const SplitSpec& split, const std::vector<BenchmarkSample>& samples);

// Throws Error{kInvalidGraph}.
BenchmarkSample synthesize_sample(
    const dfd::Graph& graph, std::string id,
    const stride::RuleTable& table = stride::RuleTable::standard(),
    const nist::MitigationMap& mitigations = nist::MitigationMap::standard());

// Random valid banking-style graph; a pure function of the engine state.
dfd::Graph random_banking_graph(std::mt19937_64& rng);

// Samples "synth-001".. built from consecutive random graphs.
std::vector<BenchmarkSample> synthesize_dataset(std::uint64_t seed, std::size_t count);

struct LoraSpec {
  std::int64_t r = 32;
  double alpha = 64;
  double dropout = 0.1;
  std::vector<std::string> target_modules{"q_proj", "k_proj", "v_proj", "o_proj"};
  std::optional<std::int64_t> d;
  std::optional<std::int64_t> k;
};

struct TrainManifest {
  LoraSpec lora;
  int batch_size = 4;
  int grad_accum = 4;
  std::string optimizer_name = "paged_adamw_32bit";
  double learning_rate = 1e-4;
  int epochs = 30;
  double eval_interval_fraction = 0.2;
};

// Throws Error{kInvalidArgument}.
void validate_manifest(const TrainManifest& manifest);
std::string manifest_to_json(const TrainManifest& manifest, const SplitSpec& split);

// Writes train.jsonl, test.jsonl and manifest.json. Throws Error{kIoError |
// kSchemaError | kInvalidArgument}.
std::vector<std::filesystem::path> export_finetune(
    const std::vector<BenchmarkSample>& samples, const SplitSpec& split,
    const TrainManifest& manifest, const std::filesystem::path& out_dir);

std::string chat_record(const BenchmarkSample& sample);

// d*r + r*k. Throws Error{kMissingDims} without d and k.
std::uint64_t lora_param_count(const LoraSpec& spec);
std::uint64_t lora_param_count(std::int64_t d, std::int64_t k, std::int64_t r);

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // row-major

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  bool operator==(const Matrix&) const = default;
};

// W + alpha * (A * B). Throws Error{kShapeMismatch}.
Matrix apply_lora_update(const Matrix& w, const Matrix& a, const Matrix& b, double alpha);

}  // namespace threatforge::dataset

#endif  // THREATFORGE_DATASET_HPP_
