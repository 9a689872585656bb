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

#include "pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace threatforge::pipeline {

using nlohmann::json;
using nlohmann::ordered_json;

SampleRun run_sample(const RunInput& input, llm::Gateway& gateway,
                     const RunOptions& options) {
  auto rendered = prompt::position_instruction(options.tmpl, input.description);
  llm::ChatRequest req;
  req.system_text = rendered.system_text;
  req.user_text = rendered.user_text;
  req.max_tokens = options.max_tokens;
  req.temperature = options.temperature;
  req.model_id = options.model_id;

  SampleRun run;
  run.id = input.id;
  run.completion = gateway.send_chat(req);
  run.parsed = parse::parse_findings(run.completion, options.cues);
  return run;
}

std::vector<SampleRun> run_inputs(const std::vector<RunInput>& inputs,
                                  llm::Gateway& gateway, const RunOptions& options) {
  std::vector<SampleRun> runs;
  runs.reserve(inputs.size());
  for (const auto& in : inputs) runs.push_back(run_sample(in, gateway, options));
  return runs;
}

std::string runs_to_json(const std::vector<SampleRun>& runs, const RunOptions& options,
                         std::string_view backend_kind) {
  ordered_json root;
  root["prompt"] = options.prompt_label;
  root["backend"] = std::string(backend_kind);
  root["model"] = options.model_id;
  root["max_tokens"] = options.max_tokens;
  root["temperature"] = options.temperature;
  ordered_json samples = ordered_json::array();
  for (const auto& r : runs) {
    ordered_json s;
    s["id"] = r.id;
    s["findings"] = ordered_json::parse(dataset::findings_to_json(r.parsed.findings));
    ordered_json spans = ordered_json::array();
    for (const auto& sp : r.parsed.unparsed_spans)
      spans.push_back({sp.offset, sp.length});
    s["unparsed_spans"] = std::move(spans);
    s["warnings"] = r.parsed.warnings;
    s["flags"] = r.parsed.findings.empty() ? std::vector<std::string>{"empty_output"}
                                           : std::vector<std::string>{};
    s["completion"] = r.completion;
    samples.push_back(std::move(s));
  }
  root["samples"] = std::move(samples);
  return root.dump(2) + "\n";
}

namespace {

std::string short_text(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  if (text.size() > 72) text = text.substr(0, 69) + "...";
  return text;
}

std::string codes_cell(const nist::CodeSet& codes) {
  return codes.empty() ? "-" : codes.joined(",");
}

std::string align(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  std::ostringstream os;
  for (std::size_t ri = 0; ri < rows.size(); ++ri) {
    std::string line;
    for (std::size_t i = 0; i < rows[ri].size(); ++i) {
      line += rows[ri][i];
      if (i + 1 < rows[ri].size()) line += std::string(width[i] - rows[ri][i].size() + 2, ' ');
    }
    os << line << "\n";
    if (ri == 0) {
      std::size_t total = 0;
      for (auto w : width) total += w + 2;
      os << std::string(total - 2, '-') << "\n";
    }
  }
  return os.str();
}

}  // namespace

std::string runs_table(const std::vector<SampleRun>& runs) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"sample", "#", "category", "codes", "threat"});
  for (const auto& r : runs) {
    if (r.parsed.findings.empty()) {
      rows.push_back({r.id, "-", "-", "-", "(no findings)"});
      continue;
    }
    for (std::size_t i = 0; i < r.parsed.findings.size(); ++i) {
      const auto& f = r.parsed.findings[i];
      rows.push_back({r.id, std::to_string(i + 1), std::string(category_name(f.category)),
                      codes_cell(f.codes), short_text(f.description)});
    }
  }
  return align(rows);
}

std::string findings_table(const std::vector<stride::ThreatFinding>& findings) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"#", "subject", "category", "codes", "threat"});
  for (std::size_t i = 0; i < findings.size(); ++i) {
    const auto& f = findings[i];
    rows.push_back({std::to_string(i + 1), f.subject_id.empty() ? "-" : f.subject_id,
                    std::string(category_name(f.category)), codes_cell(f.codes),
                    short_text(f.description)});
  }
  return align(rows);
}

std::vector<Prediction> predictions_from_json(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::kSchemaError, std::string("predictions: ") + e.what());
  }
  if (!root.is_object() || !root.contains("samples") || !root["samples"].is_array())
    throw Error(Errc::kSchemaError, "predictions: expected an object with a 'samples' array");

  std::vector<Prediction> out;
  std::map<std::string, bool> seen;
  for (const auto& s : root["samples"]) {
    if (!s.is_object() || !s.contains("id") || !s["id"].is_string() ||
        !s.contains("findings"))
      throw Error(Errc::kSchemaError, "predictions: each sample needs 'id' and 'findings'");
    Prediction p;
    p.id = s["id"].get<std::string>();
    if (seen[p.id])
      throw Error(Errc::kDuplicateId, "predictions: duplicate sample id '" + p.id + "'");
    seen[p.id] = true;
    p.parsed.findings = dataset::findings_from_json(s["findings"].dump());
    out.push_back(std::move(p));
  }
  return out;
}

eval::EvalReport evaluate_predictions(const std::vector<Prediction>& predictions,
                                      const std::vector<dataset::BenchmarkSample>& truth,
                                      const eval::SimilarityProvider& provider,
                                      nist::CompareMode mode) {
  std::map<std::string, const dataset::BenchmarkSample*> by_id;
  for (const auto& s : truth) by_id[s.id] = &s;
  std::vector<eval::SampleScore> scores;
  for (const auto& p : predictions) {
    auto it = by_id.find(p.id);
    if (it == by_id.end())
      throw Error(Errc::kSchemaError, "no ground truth for sample '" + p.id + "'");
    scores.push_back(
        eval::evaluate_sample(p.id, p.parsed, it->second->ground_truth, provider, mode));
  }
  return eval::aggregate(std::move(scores), provider);
}

void write_files(const std::filesystem::path& dir,
                 const std::vector<std::pair<std::string, std::string>>& files) {
  std::error_code ec;
  if (!dir.empty()) std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::kIoError, "cannot create " + dir.string() + ": " + ec.message());
  for (const auto& [name, content] : files) {
    auto path = dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) throw Error(Errc::kIoError, "cannot write " + path.string());
  }
}

}  // namespace threatforge::pipeline
