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

#include "opro.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include <json.hpp>

#include "eval.hpp"

namespace threatforge::opro {

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::kAccuracy: return "accuracy";
    case Metric::kPrecision: return "precision";
    case Metric::kRecall: return "recall";
  }
  return "precision";
}

Metric metric_from_name(std::string_view name) {
  for (Metric m : {Metric::kAccuracy, Metric::kPrecision, Metric::kRecall})
    if (metric_name(m) == name) return m;
  throw Error(Errc::kUsage, "metric must be accuracy, precision or recall, got '" +
                                std::string(name) + "'");
}

void validate_config(const OproConfig& c) {
  auto bad = [](const std::string& what) { throw Error(Errc::kInvalidArgument, what); };
  for (const auto* p : {&c.scorer, &c.optimizer}) {
    if (p->max_tokens <= 0) bad("max_tokens must be positive");
    if (!std::isfinite(p->temperature) || p->temperature < 0)
      bad("temperature must be finite and >= 0");
    if (p->num_decodes != 1 || p->batch != 1)
      bad("only one decode per call and batch size 1 are supported");
  }
  if (c.max_steps < 1) bad("max_steps must be at least 1");
  if (c.patience < 1) bad("patience must be at least 1");
  if (c.top_k < 1) bad("top_k must be at least 1");
}

const PromptCandidate* OproTrajectory::best() const {
  const PromptCandidate* best = nullptr;
  for (const auto& c : history)
    if (!best || c.score > best->score) best = &c;
  return best;
}

std::vector<double> OproTrajectory::best_so_far() const {
  std::vector<double> out;
  for (const auto& c : history)
    out.push_back(out.empty() ? c.score : std::max(out.back(), c.score));
  return out;
}

std::string format_score(double score) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, score);
  return std::string(buf, res.ptr);
}

std::string build_meta_prompt(const OproTrajectory& trajectory,
                              const std::vector<prompt::Exemplar>& task_exemplars,
                              Metric metric) {
  // Distinct instructions, first occurrence wins.
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < trajectory.history.size(); ++i) {
    bool dup = false;
    for (auto j : idx) dup = dup || trajectory.history[j].instruction ==
                                        trajectory.history[i].instruction;
    if (!dup) idx.push_back(i);
  }
  const auto& h = trajectory.history;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return h[a].score > h[b].score; });
  if (idx.size() > static_cast<std::size_t>(std::max(trajectory.top_k, 0)))
    idx.resize(static_cast<std::size_t>(std::max(trajectory.top_k, 0)));
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return h[a].score != h[b].score ? h[a].score < h[b].score : a < b;
  });

  std::string out =
      "Your task is to write an instruction for STRIDE threat modeling of banking "
      "system designs. Each answer lists threats with mitigations and NIST SP "
      "800-53 control codes.";
  if (!idx.empty()) {
    out += "\n\nBelow are previous instructions with their ";
    out += metric_name(metric);
    out += " scores. The scores range from 0 to 1 and higher is better. They are "
           "arranged in ascending order.";
    for (auto i : idx) {
      out += "\n\ntext:\n" + h[i].instruction + "\nscore:\n" + format_score(h[i].score);
    }
  }
  if (!task_exemplars.empty()) {
    out += "\n\nBelow are example problems. The instruction is placed before each "
           "question.";
    for (const auto& ex : task_exemplars)
      out += "\n\nQuestion:\n" + ex.question + "\nAnswer:\n" + ex.answer;
  }
  out += "\n\nWrite a new instruction that is different from the old ones and has a "
         "score as high as possible. Write the instruction in square brackets.";
  return out;
}

std::string extract_proposal(std::string_view reply) {
  auto open = reply.find('[');
  if (open != std::string_view::npos) {
    auto close = reply.find(']', open + 1);
    if (close != std::string_view::npos) reply = reply.substr(open + 1, close - open - 1);
  }
  auto b = reply.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = reply.find_last_not_of(" \t\r\n");
  return std::string(reply.substr(b, e - b + 1));
}

double score_candidate(std::string_view instruction,
                       const std::vector<dataset::BenchmarkSample>& samples,
                       llm::Gateway& scorer, Metric metric, const OproConfig& config,
                       const parse::CueConfig& cues) {
  if (samples.empty()) throw Error(Errc::kEmptyInput, "scoring needs at least one sample");
  prompt::PromptTemplate tmpl;
  tmpl.instruction = std::string(instruction);
  tmpl.position = prompt::Position::kQBegin;

  double sum = 0;
  for (const auto& s : samples) {
    auto rendered = prompt::position_instruction(tmpl, s.description);
    llm::ChatRequest req;
    req.system_text = rendered.system_text;
    req.user_text = rendered.user_text;
    req.max_tokens = config.scorer.max_tokens;
    req.temperature = config.scorer.temperature;
    req.model_id = config.scorer_model;
    auto parsed = parse::parse_findings(scorer.send_chat(req), cues);
    if (parsed.findings.empty()) continue;

    nist::CodeSet gen, truth;
    for (const auto& f : parsed.findings) gen.insert_all(f.codes);
    for (const auto& f : s.ground_truth) truth.insert_all(f.codes);
    auto m = eval::set_metrics(gen, truth);
    switch (metric) {
      case Metric::kAccuracy: sum += m.accuracy; break;
      case Metric::kPrecision: sum += m.precision; break;
      case Metric::kRecall: sum += m.recall; break;
    }
  }
  return sum / static_cast<double>(samples.size());
}

OptimizeResult optimize(std::string_view seed_instruction,
                        const std::vector<dataset::BenchmarkSample>& samples,
                        const OproConfig& config, llm::Gateway& scorer,
                        llm::Gateway& optimizer,
                        const std::optional<OproTrajectory>& resume) {
  validate_config(config);
  if (seed_instruction.find_first_not_of(" \t\r\n") == std::string_view::npos)
    throw Error(Errc::kInvalidArgument, "seed instruction must not be empty");

  std::vector<prompt::Exemplar> exemplars;
  for (std::size_t i = 0; i < samples.size() && i < config.num_exemplars; ++i)
    exemplars.push_back({samples[i].description,
                         parse::format_findings(samples[i].ground_truth)});

  OptimizeResult result;
  auto& traj = result.trajectory;
  traj.top_k = config.top_k;
  std::map<std::string, double> cache;

  if (resume && !resume->history.empty()) {
    if (resume->history.front().instruction != seed_instruction)
      throw Error(Errc::kInvalidArgument,
                  "resumed trajectory starts from a different seed instruction");
    traj.history = resume->history;
    for (const auto& c : traj.history) cache.emplace(c.instruction, c.score);
  }

  try {
    if (traj.history.empty()) {
      double s = score_candidate(seed_instruction, samples, scorer, config.metric, config);
      traj.history.push_back({0, std::string(seed_instruction), s});
      cache.emplace(std::string(seed_instruction), s);
    }

    // Replay stopping state from the history so resumed runs stop where a
    // fresh run would have.
    double best = traj.history.front().score;
    int stale = 0;
    for (std::size_t i = 1; i < traj.history.size(); ++i) {
      if (traj.history[i].score > best) {
        best = traj.history[i].score;
        stale = 0;
      } else {
        ++stale;
      }
    }

    for (int step = traj.history.back().step + 1;
         step <= config.max_steps && stale < config.patience; ++step) {
      llm::ChatRequest req;
      req.system_text = "";
      req.user_text = build_meta_prompt(traj, exemplars, config.metric);
      req.max_tokens = config.optimizer.max_tokens;
      req.temperature = config.optimizer.temperature;
      req.model_id = config.optimizer_model;
      std::string proposal = extract_proposal(optimizer.send_chat(req));
      if (proposal.empty())
        throw Error(Errc::kBackendFailure, "optimizer returned an empty instruction");

      double score;
      if (auto it = cache.find(proposal); it != cache.end()) {
        score = it->second;
      } else {
        score = score_candidate(proposal, samples, scorer, config.metric, config);
        cache.emplace(proposal, score);
      }
      traj.history.push_back({step, proposal, score});
      if (score > best) {
        best = score;
        stale = 0;
      } else {
        ++stale;
      }
    }
  } catch (const Error& e) {
    result.error = e;
  }
  return result;
}

// ---------------------------------------------------------------------------

std::string trajectory_to_jsonl(const TrajectoryHeader& header,
                                const OproTrajectory& trajectory) {
  nlohmann::ordered_json h;
  h["opro_trajectory"] = 1;
  h["metric"] = std::string(metric_name(header.metric));
  h["scored_on"] = header.scored_on;
  h["n_samples"] = header.n_samples;
  h["split_seed"] = header.split_seed;
  h["max_steps"] = header.max_steps;
  h["patience"] = header.patience;
  h["top_k"] = header.top_k;
  std::string out = h.dump() + "\n";
  for (const auto& c : trajectory.history) {
    nlohmann::ordered_json r;
    r["step"] = c.step;
    r["instruction"] = c.instruction;
    r["score"] = c.score;
    out += r.dump() + "\n";
  }
  return out;
}

std::pair<TrajectoryHeader, OproTrajectory> trajectory_from_jsonl(std::string_view text) {
  TrajectoryHeader header;
  OproTrajectory traj;
  bool have_header = false;
  int line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    auto fail = [&](const std::string& what) -> void {
      throw Error(Errc::kSchemaError, "trajectory: " + what, SourceLoc{line_no, 1});
    };
    try {
      auto j = nlohmann::json::parse(line);
      if (!have_header) {
        if (!j.contains("opro_trajectory")) fail("missing header line");
        header.metric = metric_from_name(j.at("metric").get<std::string>());
        header.scored_on = j.at("scored_on").get<std::string>();
        header.n_samples = j.at("n_samples").get<std::size_t>();
        header.split_seed = j.at("split_seed").get<std::uint64_t>();
        header.max_steps = j.at("max_steps").get<int>();
        header.patience = j.at("patience").get<int>();
        header.top_k = j.at("top_k").get<int>();
        traj.top_k = header.top_k;
        have_header = true;
        continue;
      }
      PromptCandidate c;
      c.step = j.at("step").get<int>();
      c.instruction = j.at("instruction").get<std::string>();
      c.score = j.at("score").get<double>();
      int expected = traj.history.empty() ? 0 : traj.history.back().step + 1;
      if (c.step != expected)
        fail("expected step " + std::to_string(expected) + ", got " +
             std::to_string(c.step));
      traj.history.push_back(std::move(c));
    } catch (const nlohmann::json::exception& e) {
      fail(e.what());
    } catch (const Error& e) {
      if (e.code() == Errc::kSchemaError) throw;
      fail(e.what());
    }
  }
  if (!have_header) throw Error(Errc::kSchemaError, "trajectory: empty file");
  return {header, traj};
}

}  // namespace threatforge::opro
