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

#include "threatforge/threatforge.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dataset.hpp"
#include "dfd.hpp"
#include "error.hpp"
#include "eval.hpp"
#include "gateway.hpp"
#include "list_file.hpp"
#include "opro.hpp"
#include "parser.hpp"
#include "pipeline.hpp"
#include "prompt.hpp"
#include "stride.hpp"

namespace tf = threatforge;

struct tf_graph {
  tf::dfd::Graph graph;
};

struct tf_backend {
  std::string kind;
  std::unique_ptr<tf::llm::Gateway> gateway;
};

struct tf_dataset {
  std::vector<tf::dataset::BenchmarkSample> samples;
};

namespace {

thread_local std::string g_error_message;
thread_local std::string g_error_kind;

tf_status fail(tf::Errc code, const std::string& message) {
  g_error_kind = std::string(tf::errc_name(code));
  g_error_message = message;
  return static_cast<tf_status>(tf::error_class(code));
}

template <typename Fn>
tf_status guard(Fn&& fn) {
  g_error_kind.clear();
  g_error_message.clear();
  try {
    fn();
    return TF_OK;
  } catch (const tf::Error& e) {
    return fail(e.code(), e.what());
  } catch (const std::bad_alloc&) {
    return fail(tf::Errc::kInternal, "out of memory");
  } catch (const std::exception& e) {
    return fail(tf::Errc::kInternal, e.what());
  } catch (...) {
    return fail(tf::Errc::kInternal, "unknown failure");
  }
}

void need(const void* p, const char* what) {
  if (!p) throw tf::Error(tf::Errc::kInvalidArgument, std::string(what) + " is NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

std::string opt(const char* s, const char* fallback = "") { return s ? s : fallback; }

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(' ');
    auto e = item.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

tf::prompt::PromptTemplate template_for(const char* selector, const char* exemplars_path) {
  std::string sel = opt(selector, "initial");
  if (exemplars_path)
    return tf::prompt::select_prompt(sel, tf::prompt::load_exemplars(exemplars_path));
  return tf::prompt::select_prompt(sel);
}

tf::pipeline::RunOptions run_options(const tf_run_options* o) {
  tf::pipeline::RunOptions r;
  r.tmpl = template_for(o->prompt, o->exemplars_path);
  r.prompt_label = opt(o->prompt, "initial");
  if (o->cues_path) r.cues = tf::parse::CueConfig::load(o->cues_path);
  if (o->model) r.model_id = o->model;
  if (o->max_tokens > 0) r.max_tokens = o->max_tokens;
  r.temperature = o->temperature;
  return r;
}

std::string backend_kind(const std::string& spec) {
  return spec.substr(0, spec.find(':'));
}

std::string finish_run(const tf_run_options* o, const std::vector<tf::pipeline::SampleRun>& runs,
                       const tf::pipeline::RunOptions& ro, tf_format format) {
  std::string json = tf::pipeline::runs_to_json(runs, ro, backend_kind(opt(o->backend)));
  std::string table = tf::pipeline::runs_table(runs);
  if (o->out_dir)
    tf::pipeline::write_files(o->out_dir, {{"findings.json", json}, {"findings.txt", table}});
  return format == TF_FORMAT_TEXT ? table : json;
}

}  // namespace

extern "C" {

const char* tf_version(void) { return "0.1.0"; }

const char* tf_last_error_message(void) { return g_error_message.c_str(); }
const char* tf_last_error_kind(void) { return g_error_kind.c_str(); }

void tf_string_free(char* s) { std::free(s); }

// ---- graphs ---------------------------------------------------------------

tf_status tf_graph_parse(const char* source, size_t length, tf_graph** out) {
  return guard([&] {
    need(source, "source");
    need(out, "out");
    *out = new tf_graph{tf::dfd::parse(std::string_view(source, length))};
  });
}

tf_status tf_graph_load(const char* path, tf_graph** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new tf_graph{tf::dfd::load(path)};
  });
}

void tf_graph_free(tf_graph* graph) { delete graph; }

tf_status tf_graph_validate(const tf_graph* graph, tf_format format, char** diagnostics) {
  return guard([&] {
    need(graph, "graph");
    need(diagnostics, "diagnostics");
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    std::string text;
    for (const auto& d : tf::dfd::validate(graph->graph)) {
      if (d.loc)
        text += std::to_string(d.loc->line) + ":" + std::to_string(d.loc->col) + ": ";
      text += std::string(tf::dfd::diagnostic_name(d.kind)) + " " + d.subject + ": " +
              d.message + "\n";
      nlohmann::ordered_json j;
      j["kind"] = std::string(tf::dfd::diagnostic_name(d.kind));
      j["subject"] = d.subject;
      j["message"] = d.message;
      if (d.loc) {
        j["line"] = d.loc->line;
        j["col"] = d.loc->col;
      }
      arr.push_back(std::move(j));
    }
    *diagnostics = dup(format == TF_FORMAT_TEXT ? text : arr.dump(2) + "\n");
  });
}

tf_status tf_graph_render(const tf_graph* graph, char** text, size_t* token_count) {
  return guard([&] {
    need(graph, "graph");
    need(text, "text");
    auto d = tf::dfd::render_description(graph->graph);
    *text = dup(d.text);
    if (token_count) *token_count = d.token_count;
  });
}

tf_status tf_graph_serialize(const tf_graph* graph, char** source) {
  return guard([&] {
    need(graph, "graph");
    need(source, "source");
    *source = dup(tf::dfd::serialize(graph->graph));
  });
}

tf_status tf_oracle_enumerate(const tf_graph* graph, const char* rules_path,
                              const char* mitigations_path, tf_format format, char** out) {
  return guard([&] {
    need(graph, "graph");
    need(out, "out");
    auto rules = rules_path ? tf::stride::RuleTable::load(rules_path)
                            : tf::stride::RuleTable::standard();
    auto mitigations = mitigations_path ? tf::nist::MitigationMap::load(mitigations_path)
                                        : tf::nist::MitigationMap::standard();
    auto findings = tf::stride::enumerate_threats(graph->graph, rules, mitigations);
    *out = dup(format == TF_FORMAT_TEXT ? tf::pipeline::findings_table(findings)
                                        : tf::dataset::findings_to_json(findings));
  });
}

// ---- prompts and parsing --------------------------------------------------

tf_status tf_prompt_render(const char* selector, const char* exemplars_path,
                           const char* question, tf_position position,
                           char** system_text, char** user_text) {
  return guard([&] {
    need(system_text, "system_text");
    need(user_text, "user_text");
    auto tmpl = template_for(selector, exemplars_path);
    tmpl.position = position == TF_Q_END ? tf::prompt::Position::kQEnd
                                         : tf::prompt::Position::kQBegin;
    auto r = question ? tf::prompt::position_instruction(tmpl, question)
                                   : tf::prompt::render_instruction(tmpl);
    *system_text = dup(r.system_text);
    *user_text = dup(r.user_text);
  });
}

tf_status tf_parse_completion(const char* text, const char* cues_path, tf_format format,
                              char** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    auto cues = cues_path ? tf::parse::CueConfig::load(cues_path) : tf::parse::CueConfig{};
    tf::pipeline::SampleRun run;
    run.id = "input";
    run.completion = text;
    run.parsed = tf::parse::parse_findings(text, cues);
    *out = dup(format == TF_FORMAT_TEXT ? tf::pipeline::findings_table(run.parsed.findings)
                                        : tf::dataset::findings_to_json(run.parsed.findings));
  });
}

tf_status tf_extract_codes(const char* text, char** codes) {
  return guard([&] {
    need(text, "text");
    need(codes, "codes");
    *codes = dup(tf::parse::extract_codes(text).codes.joined(","));
  });
}

// ---- backends -------------------------------------------------------------

tf_status tf_backend_open(const char* spec, tf_backend** out) {
  return guard([&] {
    need(spec, "spec");
    need(out, "out");
    auto bs = tf::llm::parse_backend_arg(spec);
    auto b = std::make_unique<tf_backend>();
    b->kind = backend_kind(spec);
    b->gateway = std::make_unique<tf::llm::Gateway>(bs);
    *out = b.release();
  });
}

void tf_backend_free(tf_backend* backend) { delete backend; }

tf_status tf_backend_chat(tf_backend* backend, const char* system_text,
                          const char* user_text, int max_tokens, double temperature,
                          const char* model, char** completion) {
  return guard([&] {
    need(backend, "backend");
    need(user_text, "user_text");
    need(completion, "completion");
    tf::llm::ChatRequest req;
    req.system_text = opt(system_text);
    req.user_text = user_text;
    req.max_tokens = max_tokens;
    req.temperature = temperature;
    if (model) req.model_id = model;
    *completion = dup(backend->gateway->send_chat(req));
  });
}

// ---- metrics --------------------------------------------------------------

tf_status tf_set_metrics(const char* const* generated, size_t n_generated,
                         const char* const* truth, size_t n_truth, int strict,
                         double out[3], int* degenerate) {
  return guard([&] {
    need(out, "out");
    if (n_generated) need(generated, "generated");
    if (n_truth) need(truth, "truth");
    auto mode = strict ? tf::nist::CompareMode::kStrict : tf::nist::CompareMode::kBaseOnly;
    tf::nist::CodeSet gen(mode), tru(mode);
    for (size_t i = 0; i < n_generated; ++i) gen.insert(tf::nist::normalize_code(generated[i]));
    for (size_t i = 0; i < n_truth; ++i) tru.insert(tf::nist::normalize_code(truth[i]));
    auto m = tf::eval::set_metrics(gen, tru);
    out[0] = m.precision;
    out[1] = m.recall;
    out[2] = m.accuracy;
    if (degenerate) *degenerate = m.degenerate ? 1 : 0;
  });
}

tf_status tf_text_similarity(const char* a, const char* b, const char* provider,
                             double* out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = tf::eval::text_similarity(
        a, b, tf::eval::SimilarityProvider::parse(opt(provider, "lexical")));
  });
}

// ---- datasets -------------------------------------------------------------

tf_status tf_dataset_load(const char* path, tf_dataset** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new tf_dataset{tf::dataset::load_samples(path)};
  });
}

tf_status tf_dataset_synthesize(uint64_t seed, size_t count, tf_dataset** out) {
  return guard([&] {
    need(out, "out");
    if (count == 0) throw tf::Error(tf::Errc::kInvalidArgument, "count must be positive");
    *out = new tf_dataset{tf::dataset::synthesize_dataset(seed, count)};
  });
}

void tf_dataset_free(tf_dataset* dataset) { delete dataset; }

size_t tf_dataset_size(const tf_dataset* dataset) {
  return dataset ? dataset->samples.size() : 0;
}

tf_status tf_dataset_save(const tf_dataset* dataset, const char* path) {
  return guard([&] {
    need(dataset, "dataset");
    need(path, "path");
    tf::dataset::write_samples(dataset->samples, path);
  });
}

tf_status tf_dataset_split(const tf_dataset* dataset, uint64_t seed, char** split_json) {
  return guard([&] {
    need(dataset, "dataset");
    need(split_json, "split_json");
    *split_json = dup(tf::dataset::split_to_json(
        tf::dataset::split_dataset(dataset->samples, seed)));
  });
}

void tf_lora_options_init(tf_lora_options* o) {
  if (!o) return;
  tf::dataset::TrainManifest m;
  o->r = m.lora.r;
  o->alpha = m.lora.alpha;
  o->dropout = m.lora.dropout;
  o->target_modules = "q_proj,k_proj,v_proj,o_proj";
  o->d = 0;
  o->k = 0;
  o->batch_size = m.batch_size;
  o->grad_accum = m.grad_accum;
  o->optimizer = "paged_adamw_32bit";
  o->learning_rate = m.learning_rate;
  o->epochs = m.epochs;
  o->eval_interval_fraction = m.eval_interval_fraction;
}

tf_status tf_dataset_export_finetune(const tf_dataset* dataset, const char* split_json,
                                     uint64_t split_seed, const tf_lora_options* options,
                                     const char* out_dir) {
  return guard([&] {
    need(dataset, "dataset");
    need(out_dir, "out_dir");
    tf_lora_options defaults;
    tf_lora_options_init(&defaults);
    const tf_lora_options* o = options ? options : &defaults;

    tf::dataset::TrainManifest m;
    m.lora.r = o->r;
    m.lora.alpha = o->alpha;
    m.lora.dropout = o->dropout;
    m.lora.target_modules = split_commas(opt(o->target_modules));
    if (o->d > 0 || o->k > 0) {
      m.lora.d = o->d;
      m.lora.k = o->k;
    }
    m.batch_size = o->batch_size;
    m.grad_accum = o->grad_accum;
    m.optimizer_name = opt(o->optimizer, "paged_adamw_32bit");
    m.learning_rate = o->learning_rate;
    m.epochs = o->epochs;
    m.eval_interval_fraction = o->eval_interval_fraction;

    auto split = split_json ? tf::dataset::split_from_json(split_json)
                            : tf::dataset::split_dataset(dataset->samples, split_seed);
    tf::dataset::export_finetune(dataset->samples, split, m, out_dir);
  });
}

tf_status tf_lora_param_count(int64_t d, int64_t k, int64_t r, uint64_t* out) {
  return guard([&] {
    need(out, "out");
    *out = tf::dataset::lora_param_count(d, k, r);
  });
}

// ---- pipeline -------------------------------------------------------------

void tf_run_options_init(tf_run_options* o) {
  if (!o) return;
  *o = tf_run_options{};
  o->prompt = "initial";
  o->max_tokens = 1024;
  o->temperature = 0.0;
}

tf_status tf_run_text(const tf_run_options* options, const char* id,
                      const char* description, tf_format format, char** report) {
  return guard([&] {
    need(options, "options");
    need(options->backend, "options->backend");
    need(description, "description");
    auto ro = run_options(options);
    tf::llm::Gateway gateway(tf::llm::parse_backend_arg(options->backend));
    auto runs = tf::pipeline::run_inputs({{opt(id, "input"), description}}, gateway, ro);
    std::string out = finish_run(options, runs, ro, format);
    if (report) *report = dup(out);
  });
}

tf_status tf_run_dataset(const tf_run_options* options, const tf_dataset* dataset,
                         const char* split_json, const char* part, tf_format format,
                         char** report) {
  return guard([&] {
    need(options, "options");
    need(options->backend, "options->backend");
    need(dataset, "dataset");
    auto ro = run_options(options);

    std::vector<tf::pipeline::RunInput> inputs;
    if (split_json) {
      auto split = tf::dataset::split_from_json(split_json);
      tf::dataset::check_split(split, dataset->samples);
      std::string which = opt(part, "test");
      if (which != "train" && which != "test")
        throw tf::Error(tf::Errc::kUsage, "part must be 'train' or 'test'");
      const auto& ids = which == "train" ? split.train_ids : split.test_ids;
      for (const auto& id : ids)
        for (const auto& s : dataset->samples)
          if (s.id == id) inputs.push_back({s.id, s.description});
    } else {
      for (const auto& s : dataset->samples) inputs.push_back({s.id, s.description});
    }
    tf::llm::Gateway gateway(tf::llm::parse_backend_arg(options->backend));
    auto runs = tf::pipeline::run_inputs(inputs, gateway, ro);
    std::string out = finish_run(options, runs, ro, format);
    if (report) *report = dup(out);
  });
}

void tf_eval_options_init(tf_eval_options* o) {
  if (!o) return;
  *o = tf_eval_options{};
  o->similarity = "lexical";
}

tf_status tf_evaluate_files(const char* predictions_path, const char* truth_path,
                            const tf_eval_options* options, tf_format format,
                            char** report_out) {
  return guard([&] {
    need(predictions_path, "predictions_path");
    need(truth_path, "truth_path");
    tf_eval_options defaults;
    tf_eval_options_init(&defaults);
    const tf_eval_options* o = options ? options : &defaults;

    auto provider = tf::eval::SimilarityProvider::parse(opt(o->similarity, "lexical"));
    if (o->model) provider.model = o->model;
    provider.fallback_on_failure = o->allow_fallback != 0;
    auto mode = o->strict_codes ? tf::nist::CompareMode::kStrict
                                : tf::nist::CompareMode::kBaseOnly;

    auto preds = tf::pipeline::predictions_from_json(tf::read_text_file(predictions_path));
    auto truth = tf::dataset::load_samples(truth_path);
    auto report = tf::pipeline::evaluate_predictions(preds, truth, provider, mode);
    std::string json = tf::eval::report_json(report);
    std::string table = tf::eval::report_table(report);
    if (o->out_dir)
      tf::pipeline::write_files(o->out_dir, {{"report.json", json}, {"report.txt", table}});
    if (report_out) *report_out = dup(format == TF_FORMAT_TEXT ? table : json);
  });
}

void tf_opro_options_init(tf_opro_options* o) {
  if (!o) return;
  *o = tf_opro_options{};
  tf::opro::OproConfig c;
  o->metric = "precision";
  o->max_steps = c.max_steps;
  o->patience = c.patience;
  o->top_k = c.top_k;
}

tf_status tf_opro_optimize(const tf_opro_options* options, char** summary_json) {
  tf::opro::OptimizeResult result;
  tf::opro::TrajectoryHeader header;
  tf_status status = guard([&] {
    need(options, "options");
    need(options->scorer_backend, "options->scorer_backend");
    need(options->dataset_path, "options->dataset_path");
    need(options->out_path, "options->out_path");

    tf::opro::OproConfig config;
    config.metric = tf::opro::metric_from_name(opt(options->metric, "precision"));
    config.max_steps = options->max_steps;
    config.patience = options->patience;
    config.top_k = options->top_k;
    if (options->model) config.scorer_model = config.optimizer_model = options->model;
    tf::opro::validate_config(config);

    auto samples = tf::dataset::load_samples(options->dataset_path);
    auto split = tf::dataset::split_dataset(samples, options->split_seed);
    std::vector<tf::dataset::BenchmarkSample> train;
    for (const auto& id : split.train_ids)
      for (const auto& s : samples)
        if (s.id == id) train.push_back(s);

    header.metric = config.metric;
    header.n_samples = train.size();
    header.split_seed = options->split_seed;
    header.max_steps = config.max_steps;
    header.patience = config.patience;
    header.top_k = config.top_k;

    std::optional<tf::opro::OproTrajectory> resume;
    if (options->resume_path) {
      auto [h, t] = tf::opro::trajectory_from_jsonl(tf::read_text_file(options->resume_path));
      if (h.metric != header.metric || h.n_samples != header.n_samples ||
          h.split_seed != header.split_seed)
        throw tf::Error(tf::Errc::kInvalidArgument,
                        "resumed trajectory was scored with a different metric or split");
      resume = std::move(t);
    }

    tf::llm::Gateway scorer(tf::llm::parse_backend_arg(options->scorer_backend));
    std::unique_ptr<tf::llm::Gateway> separate;
    if (options->optimizer_backend && std::strcmp(options->optimizer_backend,
                                                  options->scorer_backend) != 0)
      separate = std::make_unique<tf::llm::Gateway>(
          tf::llm::parse_backend_arg(options->optimizer_backend));
    tf::llm::Gateway& optimizer = separate ? *separate : scorer;

    std::string seed = options->seed_instruction
                           ? std::string(options->seed_instruction)
                           : std::string(tf::prompt::kInitialInstruction);
    result = tf::opro::optimize(seed, train, config, scorer, optimizer, resume);

    tf::pipeline::write_files(
        std::filesystem::path(options->out_path).parent_path(),
        {{std::filesystem::path(options->out_path).filename().string(),
          tf::opro::trajectory_to_jsonl(header, result.trajectory)}});

    if (summary_json) {
      nlohmann::ordered_json j;
      const auto* best = result.trajectory.best();
      j["best_score"] = best ? nlohmann::ordered_json(best->score) : nullptr;
      j["best_instruction"] = best ? nlohmann::ordered_json(best->instruction) : nullptr;
      j["steps"] = result.trajectory.history.empty()
                       ? 0
                       : result.trajectory.history.back().step;
      j["history"] = result.trajectory.history.size();
      j["stopped_early"] = result.error.has_value();
      *summary_json = dup(j.dump(2) + "\n");
    }
    if (result.error) throw *result.error;
  });
  return status;
}

}  // extern "C"
