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

#include "dataset.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "error.hpp"
#include "list_file.hpp"
#include "parser.hpp"
#include "prompt.hpp"

namespace threatforge::dataset {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(Errc::kSchemaError, where + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, std::string("missing '") + key + "'");
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& where,
                           bool allow_empty = false) {
  const json& v = require(obj, key, where);
  if (!v.is_string()) schema_error(where + "." + key, "expected a string");
  std::string s = v.get<std::string>();
  if (!allow_empty && s.find_first_not_of(" \t\r\n") == std::string::npos)
    schema_error(where + "." + key, "must not be empty");
  return s;
}

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
  for (const auto& [k, v] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      schema_error(where, "unknown field '" + k + "'");
  }
}

stride::ThreatFinding finding_from(const json& j, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  check_keys(j, {"category", "subject", "threat", "mitigation", "codes"}, where);
  stride::ThreatFinding f;
  std::string cat = require_string(j, "category", where);
  auto c = category_from_string(cat);
  if (!c) schema_error(where + ".category", "unknown STRIDE category '" + cat + "'");
  f.category = *c;
  if (j.contains("subject")) f.subject_id = require_string(j, "subject", where);
  f.description = require_string(j, "threat", where);
  f.mitigation = require_string(j, "mitigation", where, true);
  const json& codes = require(j, "codes", where);
  if (!codes.is_array()) schema_error(where + ".codes", "expected an array");
  for (std::size_t i = 0; i < codes.size(); ++i) {
    std::string at = where + ".codes[" + std::to_string(i) + "]";
    if (!codes[i].is_string()) schema_error(at, "expected a string");
    auto code = nist::try_normalize_code(codes[i].get<std::string>());
    if (!code) schema_error(at, "not a control code: '" + codes[i].get<std::string>() + "'");
    f.codes.insert(*code);
  }
  return f;
}

ordered_json finding_to(const stride::ThreatFinding& f) {
  ordered_json j;
  j["category"] = std::string(category_name(f.category));
  if (!f.subject_id.empty()) j["subject"] = f.subject_id;
  j["threat"] = f.description;
  j["mitigation"] = f.mitigation;
  j["codes"] = f.codes.texts();
  return j;
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::kSchemaError, std::string(what) + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::kIoError, "cannot write " + path.string());
  out << content;
  out.close();
  if (!out) throw Error(Errc::kIoError, "failed writing " + path.string());
}

}  // namespace

std::vector<BenchmarkSample> parse_samples(std::string_view json_text) {
  json root = parse_json(json_text, "dataset");
  if (!root.is_array()) schema_error("dataset", "expected a JSON array of samples");

  std::vector<BenchmarkSample> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < root.size(); ++i) {
    const json& j = root[i];
    std::string where = "samples[" + std::to_string(i) + "]";
    if (!j.is_object()) schema_error(where, "expected an object");
    check_keys(j, {"id", "description", "dfd", "ground_truth"}, where);

    BenchmarkSample s;
    s.id = require_string(j, "id", where);
    if (!seen.insert(s.id).second)
      throw Error(Errc::kDuplicateId, "duplicate sample id '" + s.id + "'");
    where = "sample '" + s.id + "'";
    s.description = require_string(j, "description", where);
    if (j.contains("dfd") && !j["dfd"].is_null()) {
      s.dfd = require_string(j, "dfd", where);
      dfd::Graph g;
      try {
        g = dfd::parse(*s.dfd);
      } catch (const Error& e) {
        schema_error(where + ".dfd", e.what());
      }
      if (dfd::render_description(g).text != s.description)
        schema_error(where, "description does not match the rendered dfd");
    }
    const json& gt = require(j, "ground_truth", where);
    if (!gt.is_array() || gt.empty())
      schema_error(where + ".ground_truth", "expected a non-empty array");
    for (std::size_t k = 0; k < gt.size(); ++k)
      s.ground_truth.push_back(
          finding_from(gt[k], where + ".ground_truth[" + std::to_string(k) + "]"));
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<BenchmarkSample> load_samples(const std::filesystem::path& path) {
  return parse_samples(read_text_file(path.string()));
}

std::string samples_to_json(const std::vector<BenchmarkSample>& samples) {
  ordered_json root = ordered_json::array();
  for (const auto& s : samples) {
    ordered_json j;
    j["id"] = s.id;
    j["description"] = s.description;
    if (s.dfd) j["dfd"] = *s.dfd;
    ordered_json gt = ordered_json::array();
    for (const auto& f : s.ground_truth) gt.push_back(finding_to(f));
    j["ground_truth"] = std::move(gt);
    root.push_back(std::move(j));
  }
  return root.dump(2) + "\n";
}

void write_samples(const std::vector<BenchmarkSample>& samples,
                   const std::filesystem::path& path) {
  write_file(path, samples_to_json(samples));
}

std::string findings_to_json(const std::vector<stride::ThreatFinding>& findings) {
  ordered_json arr = ordered_json::array();
  for (const auto& f : findings) arr.push_back(finding_to(f));
  return arr.dump(2) + "\n";
}

std::vector<stride::ThreatFinding> findings_from_json(std::string_view json_text) {
  json root = parse_json(json_text, "findings");
  if (!root.is_array()) schema_error("findings", "expected a JSON array");
  std::vector<stride::ThreatFinding> out;
  for (std::size_t i = 0; i < root.size(); ++i)
    out.push_back(finding_from(root[i], "findings[" + std::to_string(i) + "]"));
  return out;
}

// ---------------------------------------------------------------------------

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw Error(Errc::kInvalidArgument, "empty range");
  // Reject the top partial bucket so every residue is equally likely.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n + 1) % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return x % n;
}

std::size_t train_size(std::size_t n) {
  return std::min(n - 1, (4 * n + 4) / 5);
}

SplitSpec split_dataset(const std::vector<BenchmarkSample>& samples, std::uint64_t seed) {
  if (samples.size() < 2)
    throw Error(Errc::kTooFew, "splitting needs at least 2 samples, got " +
                                   std::to_string(samples.size()));
  std::vector<std::size_t> order(samples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size() - 1; i > 0; --i)
    std::swap(order[i], order[uniform_below(rng, i + 1)]);

  const std::size_t n_train = train_size(samples.size());
  std::vector<std::size_t> train(order.begin(), order.begin() + n_train);
  std::vector<std::size_t> test(order.begin() + n_train, order.end());
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());

  SplitSpec split;
  split.seed = seed;
  for (auto i : train) split.train_ids.push_back(samples[i].id);
  for (auto i : test) split.test_ids.push_back(samples[i].id);
  return split;
}

std::string split_to_json(const SplitSpec& split) {
  ordered_json j;
  j["seed"] = split.seed;
  j["train_ids"] = split.train_ids;
  j["test_ids"] = split.test_ids;
  return j.dump(2) + "\n";
}

SplitSpec split_from_json(std::string_view json_text) {
  json j = parse_json(json_text, "split");
  if (!j.is_object()) schema_error("split", "expected an object");
  check_keys(j, {"seed", "train_ids", "test_ids"}, "split");
  SplitSpec s;
  try {
    s.seed = require(j, "seed", "split").get<std::uint64_t>();
    s.train_ids = require(j, "train_ids", "split").get<std::vector<std::string>>();
    s.test_ids = require(j, "test_ids", "split").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    schema_error("split", e.what());
  }
  return s;
}

void check_split(const SplitSpec& split, const std::vector<BenchmarkSample>& samples) {
  std::set<std::string> ids;
  for (const auto& s : samples) ids.insert(s.id);
  std::set<std::string> seen;
  for (const auto* part : {&split.train_ids, &split.test_ids}) {
    for (const auto& id : *part) {
      if (!ids.count(id)) schema_error("split", "unknown sample id '" + id + "'");
      if (!seen.insert(id).second)
        schema_error("split", "sample id '" + id + "' listed twice");
    }
  }
  if (seen.size() != ids.size())
    schema_error("split", "split does not cover every sample");
}

// ---------------------------------------------------------------------------

BenchmarkSample synthesize_sample(const dfd::Graph& graph, std::string id,
                                  const stride::RuleTable& table,
                                  const nist::MitigationMap& mitigations) {
  BenchmarkSample s;
  s.id = std::move(id);
  s.description = dfd::render_description(graph).text;
  s.dfd = dfd::serialize(graph);
  s.ground_truth = stride::enumerate_threats(graph, table, mitigations);
  return s;
}

namespace {

constexpr std::string_view kTitles[] = {
    "Online Banking", "Mobile Payments", "Loan Origination", "Card Processing",
    "Branch Teller",  "Wealth Management", "Wire Transfer",  "Bill Pay"};
constexpr std::string_view kExternals[] = {
    "Bank Customer", "Teller", "Payment Network", "Credit Bureau",
    "Mobile App User", "Merchant"};
constexpr std::string_view kProcesses[] = {
    "Open Account",   "Authorize Payment", "Transfer Funds", "Verify Identity",
    "Generate Statement", "Score Credit",  "Process Loan",   "Manage Session"};
constexpr std::string_view kStores[] = {
    "Customer Account DB", "Transaction Ledger", "Audit Log", "Loan Records",
    "Session Cache"};
constexpr std::string_view kBoundaries[] = {"Internet", "DMZ", "Core Banking Network"};
constexpr std::string_view kFlows[] = {
    "Login Request",  "Transaction Request", "Balance Query",   "Payment Instruction",
    "Statement Data", "Audit Record",        "Loan Application", "Session Token",
    "Card Authorization", "Credit Report"};

template <std::size_t N>
std::vector<std::string> pick(std::mt19937_64& rng, const std::string_view (&pool)[N],
                              std::size_t count) {
  std::vector<std::string> names(std::begin(pool), std::end(pool));
  for (std::size_t i = 0; i < count && i < N; ++i)
    std::swap(names[i], names[i + uniform_below(rng, N - i)]);
  names.resize(std::min(count, N));
  return names;
}

}  // namespace

dfd::Graph random_banking_graph(std::mt19937_64& rng) {
  dfd::Graph g;
  g.title = std::string(kTitles[uniform_below(rng, std::size(kTitles))]) + " System";

  auto add = [&](const std::vector<std::string>& names, dfd::ElementKind kind) {
    for (const auto& n : names) {
      dfd::Element e;
      e.name = n;
      e.kind = kind;
      e.attributes.running_as = static_cast<dfd::RunningAs>(uniform_below(rng, 4));
      e.attributes.isolation = static_cast<dfd::Isolation>(uniform_below(rng, 3));
      e.attributes.accepts_input_from = static_cast<dfd::InputSource>(uniform_below(rng, 4));
      g.elements.push_back(std::move(e));
    }
  };
  add(pick(rng, kExternals, uniform_below(rng, 3)), dfd::ElementKind::kExternalEntity);
  add(pick(rng, kProcesses, 1 + uniform_below(rng, 3)), dfd::ElementKind::kProcess);
  add(pick(rng, kStores, uniform_below(rng, 3)), dfd::ElementKind::kDataStore);

  std::vector<bool> assigned(g.elements.size(), false);
  for (const auto& name : pick(rng, kBoundaries, uniform_below(rng, 3))) {
    dfd::Boundary b;
    b.name = name;
    for (std::size_t i = 0; i < g.elements.size(); ++i) {
      if (!assigned[i] && uniform_below(rng, 3) == 0) {
        assigned[i] = true;
        b.contains.push_back(g.elements[i].name);
      }
    }
    g.boundaries.push_back(std::move(b));
  }

  const std::size_t n_flows = uniform_below(rng, 5);
  auto flow_names = pick(rng, kFlows, n_flows);
  for (const auto& name : flow_names) {
    dfd::Flow f;
    f.name = name;
    const auto& src = g.elements[uniform_below(rng, g.elements.size())];
    const auto& dst = g.elements[uniform_below(rng, g.elements.size())];
    f.source = src.name;
    f.sink = dst.name;
    f.self_loop = src.name == dst.name;
    if (!g.boundaries.empty() && uniform_below(rng, 2) == 0)
      f.crosses.push_back(g.boundaries[uniform_below(rng, g.boundaries.size())].name);
    g.flows.push_back(std::move(f));
  }
  return g;
}

std::vector<BenchmarkSample> synthesize_dataset(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<BenchmarkSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "synth-%03zu", i + 1);
    out.push_back(synthesize_sample(random_banking_graph(rng), id));
  }
  return out;
}

// ---------------------------------------------------------------------------

void validate_manifest(const TrainManifest& m) {
  auto bad = [](const std::string& what) { throw Error(Errc::kInvalidArgument, what); };
  if (m.lora.r <= 0) bad("LoRA rank must be positive");
  if (!(m.lora.alpha > 0) || !std::isfinite(m.lora.alpha)) bad("lora_alpha must be positive");
  if (!(m.lora.dropout >= 0 && m.lora.dropout < 1)) bad("lora_dropout must be in [0, 1)");
  if (m.lora.target_modules.empty()) bad("target_modules must not be empty");
  if (m.lora.d.has_value() != m.lora.k.has_value()) bad("d and k must be given together");
  if (m.lora.d && (*m.lora.d <= 0 || *m.lora.k <= 0)) bad("d and k must be positive");
  if (m.lora.d && m.lora.r > std::min(*m.lora.d, *m.lora.k)) bad("rank exceeds min(d, k)");
  if (m.batch_size <= 0 || m.grad_accum <= 0 || m.epochs <= 0)
    bad("batch_size, grad_accum and epochs must be positive");
  if (!(m.learning_rate > 0) || !std::isfinite(m.learning_rate))
    bad("learning_rate must be positive");
  if (!(m.eval_interval_fraction > 0 && m.eval_interval_fraction <= 1))
    bad("eval_interval_fraction must be in (0, 1]");
}

namespace {

ordered_json number(double v) {
  if (std::floor(v) == v && std::fabs(v) < 1e15)
    return ordered_json(static_cast<std::int64_t>(v));
  return ordered_json(v);
}

}  // namespace

std::string manifest_to_json(const TrainManifest& m, const SplitSpec& split) {
  ordered_json lora;
  lora["r"] = m.lora.r;
  lora["lora_alpha"] = number(m.lora.alpha);
  lora["lora_dropout"] = m.lora.dropout;
  lora["target_modules"] = m.lora.target_modules;
  if (m.lora.d) {
    lora["d"] = *m.lora.d;
    lora["k"] = *m.lora.k;
    lora["trainable_params_per_matrix"] = lora_param_count(m.lora);
  }
  ordered_json j;
  j["lora"] = std::move(lora);
  j["batch_size"] = m.batch_size;
  j["gradient_accumulation_steps"] = m.grad_accum;
  j["optimizer"] = m.optimizer_name;
  j["learning_rate"] = m.learning_rate;
  j["epochs"] = m.epochs;
  j["eval_interval_fraction"] = m.eval_interval_fraction;
  j["split"] = {{"seed", split.seed},
                {"train", split.train_ids.size()},
                {"test", split.test_ids.size()}};
  j["record_format"] = {
      {"system", "optimized instruction"},
      {"user", "system description"},
      {"assistant",
       "one block per finding: Threat Type, Description, Mitigation, NIST lines"}};
  return j.dump(2) + "\n";
}

std::string chat_record(const BenchmarkSample& sample) {
  ordered_json j;
  j["id"] = sample.id;
  j["messages"] = ordered_json::array(
      {{{"role", "system"}, {"content", std::string(prompt::kOptimizedInstruction)}},
       {{"role", "user"}, {"content", sample.description}},
       {{"role", "assistant"}, {"content", parse::format_findings(sample.ground_truth)}}});
  return j.dump();
}

std::vector<std::filesystem::path> export_finetune(
    const std::vector<BenchmarkSample>& samples, const SplitSpec& split,
    const TrainManifest& manifest, const std::filesystem::path& out_dir) {
  check_split(split, samples);
  validate_manifest(manifest);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(Errc::kIoError, "cannot create " + out_dir.string() + ": " + ec.message());

  auto lines = [&](const std::vector<std::string>& ids) {
    std::string out;
    for (const auto& id : ids) {
      auto it = std::find_if(samples.begin(), samples.end(),
                             [&](const BenchmarkSample& s) { return s.id == id; });
      out += chat_record(*it);
      out += '\n';
    }
    return out;
  };
  std::vector<std::filesystem::path> written{out_dir / "train.jsonl",
                                             out_dir / "test.jsonl",
                                             out_dir / "manifest.json"};
  write_file(written[0], lines(split.train_ids));
  write_file(written[1], lines(split.test_ids));
  write_file(written[2], manifest_to_json(manifest, split));
  return written;
}

// ---------------------------------------------------------------------------

std::uint64_t lora_param_count(std::int64_t d, std::int64_t k, std::int64_t r) {
  if (d < 0 || k < 0 || r < 0)
    throw Error(Errc::kInvalidArgument, "dimensions must be non-negative");
  return static_cast<std::uint64_t>(d) * static_cast<std::uint64_t>(r) +
         static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(k);
}

std::uint64_t lora_param_count(const LoraSpec& spec) {
  if (!spec.d || !spec.k)
    throw Error(Errc::kMissingDims, "parameter count needs both d and k");
  return lora_param_count(*spec.d, *spec.k, spec.r);
}

Matrix apply_lora_update(const Matrix& w, const Matrix& a, const Matrix& b, double alpha) {
  if (a.rows != w.rows || b.cols != w.cols || a.cols != b.rows)
    throw Error(Errc::kShapeMismatch,
                "cannot add (" + std::to_string(a.rows) + "x" + std::to_string(a.cols) +
                    ")*(" + std::to_string(b.rows) + "x" + std::to_string(b.cols) +
                    ") to a " + std::to_string(w.rows) + "x" + std::to_string(w.cols) +
                    " matrix");
  Matrix out = w;
  for (std::size_t i = 0; i < w.rows; ++i) {
    for (std::size_t j = 0; j < w.cols; ++j) {
      double acc = 0;
      for (std::size_t t = 0; t < a.cols; ++t) acc += a(i, t) * b(t, j);
      out(i, j) += alpha * acc;
    }
  }
  return out;
}

}  // namespace threatforge::dataset
