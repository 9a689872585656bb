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

// Set-based code metrics, text similarity and macro-averaged reports.

#ifndef THREATFORGE_EVAL_HPP_
#define THREATFORGE_EVAL_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "nist.hpp"
#include "parser.hpp"
#include "stride.hpp"

namespace threatforge::eval {

struct SetMetrics {
  double precision = 0;
  double recall = 0;
  double accuracy = 0;
  bool degenerate = false;  // truth set was empty

  bool operator==(const SetMetrics&) const = default;
};

// Throws Error{kModeMismatch} when the sets use different comparison modes.
SetMetrics set_metrics(const nist::CodeSet& generated, const nist::CodeSet& truth);

inline constexpr std::string_view kDefaultEmbeddingModel = "all-MiniLM-L6-v2";

struct SimilarityProvider {
  enum class Kind { kEmbeddingEndpoint, kLexicalFallback };

  Kind kind = Kind::kLexicalFallback;
  std::string endpoint;
  std::string model{kDefaultEmbeddingModel};
  bool fallback_on_failure = false;

  static SimilarityProvider lexical() { return {}; }
  static SimilarityProvider embedding(std::string endpoint);
  // "lexical" or "endpoint:URL". Throws Error{kUsage}.
  static SimilarityProvider parse(std::string_view arg);

  std::string describe() const;
};

// Cosine of term-frequency vectors over lowercased ASCII alphanumeric runs.
double lexical_cosine(std::string_view a, std::string_view b);

// POST {endpoint}/embeddings; one vector per input, in input order.
// Throws Error{kEndpointFailure}.
std::vector<std::vector<double>> fetch_embeddings(const std::string& endpoint,
                                                  const std::string& model,
                                                  const std::vector<std::string>& texts);

double cosine(const std::vector<double>& a, const std::vector<double>& b);

struct Similarity {
  double value = 0;
  bool fell_back = false;
};

// Throws Error{kEmptyText} or Error{kEndpointFailure}.
Similarity text_similarity_ex(std::string_view a, std::string_view b,
                              const SimilarityProvider& provider);

inline double text_similarity(std::string_view a, std::string_view b,
                              const SimilarityProvider& provider) {
  return text_similarity_ex(a, b, provider).value;
}

// Finding prose used for document-level similarity.
std::string findings_text(const std::vector<stride::ThreatFinding>& findings);

struct SampleScore {
  std::string sample_id;
  double precision = 0;
  double recall = 0;
  double accuracy = 0;
  double similarity = 0;
  nist::CodeSet generated;
  nist::CodeSet truth;
  std::vector<std::string> flags;  // empty_output, empty_truth_codes, ...
};

// Throws Error{kEmptyInput} for empty truth; similarity errors propagate.
SampleScore evaluate_sample(std::string sample_id, const parse::ParsedOutput& parsed,
                            const std::vector<stride::ThreatFinding>& truth,
                            const SimilarityProvider& provider,
                            nist::CompareMode mode = nist::CompareMode::kBaseOnly);

struct MacroScores {
  double precision = 0;
  double recall = 0;
  double accuracy = 0;
  double similarity = 0;
};

struct EvalReport {
  std::vector<SampleScore> per_sample;  // ordered by sample_id
  MacroScores macro;
  std::size_t n_samples = 0;
  std::size_t n_empty_generated = 0;
  std::string similarity_provider;  // "lexical" or "endpoint:URL"
  std::string similarity_model;     // empty for lexical
};

// Throws Error{kEmptyInput}.
EvalReport aggregate(std::vector<SampleScore> scores,
                     const SimilarityProvider& provider = SimilarityProvider::lexical());

std::string report_json(const EvalReport& report);
std::string report_table(const EvalReport& report);

}  // namespace threatforge::eval

#endif  // THREATFORGE_EVAL_HPP_
