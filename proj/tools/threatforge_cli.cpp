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

// threatforge command-line tool. All work goes through the C API.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "threatforge/threatforge.h"

namespace {

class CString {
 public:
  CString() = default;
  ~CString() { tf_string_free(p_); }
  CString(const CString&) = delete;
  CString& operator=(const CString&) = delete;

  char** out() { return &p_; }
  const char* get() const { return p_ ? p_ : ""; }

 private:
  char* p_ = nullptr;
};

int report(tf_status status) {
  if (status != TF_OK)
    std::cerr << "threatforge: " << tf_last_error_kind() << ": " << tf_last_error_message()
              << "\n";
  return static_cast<int>(status);
}

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int read_or_fail(const std::string& path, std::string& out) {
  auto text = slurp(path);
  if (!text) {
    std::cerr << "threatforge: IoError: cannot read " << path << "\n";
    return TF_E_SCHEMA;
  }
  out = std::move(*text);
  return 0;
}

const char* cstr(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

tf_format format_of(const std::string& f) {
  return f == "json" ? TF_FORMAT_JSON : TF_FORMAT_TEXT;
}

int print(tf_status status, const CString& s) {
  if (status == TF_OK) {
    std::string_view text = s.get();
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  }
  return report(status);
}

struct Graph {
  tf_graph* g = nullptr;
  ~Graph() { tf_graph_free(g); }
};

struct Dataset {
  tf_dataset* d = nullptr;
  ~Dataset() { tf_dataset_free(d); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"STRIDE threat modeling with LLM backends, NIST 800-53 scoring and "
               "prompt optimization",
               "threatforge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tf_version()));

  std::string backend, optimizer_backend, prompt_sel = "initial", exemplars, cues,
                                           model, out, similarity = "lexical", format = "text";
  std::uint64_t seed = 0;

  // model
  auto* model_cmd = app.add_subcommand("model", "Data flow diagram tools");
  model_cmd->require_subcommand(1);
  std::string dfd_path;
  auto* validate = model_cmd->add_subcommand("validate", "Parse and validate a DFD file");
  validate->add_option("file", dfd_path, "DFD source")->required();
  auto* render = model_cmd->add_subcommand("render", "Render a DFD as prose");
  render->add_option("file", dfd_path, "DFD source")->required();

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Rule-based STRIDE enumeration");
  oracle_cmd->require_subcommand(1);
  std::string rules, mitigations;
  auto* enumerate = oracle_cmd->add_subcommand("enumerate", "List STRIDE-per-element threats");
  enumerate->add_option("file", dfd_path, "DFD source")->required();
  enumerate->add_option("--rules", rules, "Rule table override")->check(CLI::ExistingFile);
  enumerate->add_option("--mitigations", mitigations, "Category to code map override")
      ->check(CLI::ExistingFile);
  enumerate->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // prompt
  auto* prompt_cmd = app.add_subcommand("prompt", "Prompt construction and optimization");
  prompt_cmd->require_subcommand(1);
  std::string question_file, position = "begin";
  auto* build = prompt_cmd->add_subcommand("build", "Print a rendered prompt");
  build->add_option("--prompt", prompt_sel, "initial|optimized|cot_zero|cot_few|PATH");
  build->add_option("--exemplars", exemplars, "Few-shot pairs (JSON)")
      ->check(CLI::ExistingFile);
  auto* q_file = build->add_option("--question-file", question_file, "Question text file")
                     ->check(CLI::ExistingFile);
  build->add_option("--dfd", dfd_path, "Render this DFD as the question")
      ->check(CLI::ExistingFile)
      ->excludes(q_file);
  build->add_option("--position", position, "Instruction position")
      ->check(CLI::IsMember({"begin", "end"}));

  std::string dataset_path, metric = "precision", resume, instruction;
  int max_steps = 20, patience = 5, top_k = 8;
  auto* optimize = prompt_cmd->add_subcommand("optimize", "Run the OPRO loop");
  optimize->add_option("--backend", backend, "Scorer backend (http:URL | mock:PATH)")
      ->required();
  optimize->add_option("--optimizer-backend", optimizer_backend,
                       "Optimizer backend, defaults to --backend");
  optimize->add_option("--dataset", dataset_path, "Benchmark samples")
      ->required()
      ->check(CLI::ExistingFile);
  optimize->add_option("--metric", metric, "accuracy|precision|recall")
      ->check(CLI::IsMember({"accuracy", "precision", "recall"}));
  optimize->add_option("--seed", seed, "Split seed");
  optimize->add_option("--max-steps", max_steps)->check(CLI::PositiveNumber);
  optimize->add_option("--patience", patience)->check(CLI::PositiveNumber);
  optimize->add_option("--top-k", top_k)->check(CLI::PositiveNumber);
  optimize->add_option("--instruction", instruction, "Seed instruction");
  optimize->add_option("--model", model, "Model id sent to the backend");
  optimize->add_option("--resume", resume, "Continue a trajectory file")
      ->check(CLI::ExistingFile);
  optimize->add_option("--out", out, "Trajectory file")->required();

  // run
  std::string input_file, split_file, part = "test";
  int max_tokens = 1024;
  double temperature = 0.0;
  auto* run = app.add_subcommand("run", "Generate findings with a model backend");
  run->add_option("--backend", backend, "http:URL | mock:PATH")->required();
  run->add_option("--prompt", prompt_sel, "initial|optimized|cot_zero|cot_few|PATH");
  run->add_option("--exemplars", exemplars, "Few-shot pairs (JSON)")->check(CLI::ExistingFile);
  run->add_option("--cues", cues, "Parser cue file")->check(CLI::ExistingFile);
  run->add_option("--model", model, "Model id sent to the backend");
  run->add_option("--max-tokens", max_tokens)->check(CLI::PositiveNumber);
  run->add_option("--temperature", temperature)->check(CLI::NonNegativeNumber);
  auto* in_opt =
      run->add_option("--input", input_file, "System description text")->check(CLI::ExistingFile);
  auto* dfd_opt = run->add_option("--dfd", dfd_path, "DFD source")->check(CLI::ExistingFile);
  auto* ds_opt =
      run->add_option("--dataset", dataset_path, "Benchmark samples")->check(CLI::ExistingFile);
  in_opt->excludes(dfd_opt)->excludes(ds_opt);
  dfd_opt->excludes(ds_opt);
  run->add_option("--split", split_file, "Split file; runs one part")
      ->check(CLI::ExistingFile)
      ->needs(ds_opt);
  run->add_option("--part", part, "train or test")->check(CLI::IsMember({"train", "test"}));
  run->add_option("--out", out, "Output directory")->required();
  run->add_option("--format", format, "stdout format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // eval
  std::string pred, truth, embed_model;
  bool allow_fallback = false, strict_codes = false;
  auto* eval = app.add_subcommand("eval", "Score findings against ground truth");
  eval->add_option("--pred", pred, "findings.json from run")->required()->check(CLI::ExistingFile);
  eval->add_option("--truth", truth, "Benchmark samples")->required()->check(CLI::ExistingFile);
  eval->add_option("--similarity", similarity, "endpoint:URL | lexical");
  eval->add_option("--embedding-model", embed_model, "Embedding model id");
  eval->add_flag("--allow-fallback", allow_fallback,
                 "Use lexical similarity when the endpoint fails");
  eval->add_flag("--strict-codes", strict_codes, "Compare control enhancements");
  eval->add_option("--out", out, "Output directory");
  eval->add_option("--format", format, "stdout format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // dataset
  auto* dataset_cmd = app.add_subcommand("dataset", "Benchmark dataset tools");
  dataset_cmd->require_subcommand(1);
  std::size_t count = 10;
  auto* synth = dataset_cmd->add_subcommand("synth", "Generate oracle-labelled samples");
  synth->add_option("--count", count, "Number of samples")->check(CLI::PositiveNumber);
  synth->add_option("--seed", seed, "Generator seed");
  synth->add_option("--out", out, "Dataset file")->required();

  auto* split = dataset_cmd->add_subcommand("split", "Deterministic 4:1 train/test split");
  split->add_option("--dataset", dataset_path)->required()->check(CLI::ExistingFile);
  split->add_option("--seed", seed, "Shuffle seed");
  split->add_option("--out", out, "Split file, stdout when omitted");

  tf_lora_options lora;
  tf_lora_options_init(&lora);
  std::string target_modules = lora.target_modules, optimizer_name = lora.optimizer;
  auto* exp = dataset_cmd->add_subcommand("export-finetune",
                                          "Write chat JSONL files and a LoRA manifest");
  exp->add_option("--dataset", dataset_path)->required()->check(CLI::ExistingFile);
  exp->add_option("--split", split_file, "Split file; otherwise split with --seed")
      ->check(CLI::ExistingFile);
  exp->add_option("--seed", seed, "Shuffle seed");
  exp->add_option("--out", out, "Output directory")->required();
  exp->add_option("--rank", lora.r);
  exp->add_option("--alpha", lora.alpha);
  exp->add_option("--dropout", lora.dropout);
  exp->add_option("--target-modules", target_modules);
  exp->add_option("--d", lora.d, "Weight rows for the parameter count");
  exp->add_option("--k", lora.k, "Weight columns for the parameter count");
  exp->add_option("--batch-size", lora.batch_size);
  exp->add_option("--grad-accum", lora.grad_accum);
  exp->add_option("--optimizer", optimizer_name);
  exp->add_option("--learning-rate", lora.learning_rate);
  exp->add_option("--epochs", lora.epochs);
  exp->add_option("--eval-interval", lora.eval_interval_fraction);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return TF_E_USAGE;
  }

  if (validate->parsed() || render->parsed() || enumerate->parsed()) {
    Graph g;
    if (tf_status s = tf_graph_load(dfd_path.c_str(), &g.g); s != TF_OK) return report(s);
    CString text;
    if (validate->parsed()) {
      tf_status s = tf_graph_validate(g.g, TF_FORMAT_TEXT, text.out());
      if (s != TF_OK) return report(s);
      if (*text.get()) {
        std::cout << text.get();
        return TF_E_SCHEMA;
      }
      std::cout << "ok\n";
      return 0;
    }
    if (render->parsed()) return print(tf_graph_render(g.g, text.out(), nullptr), text);
    return print(tf_oracle_enumerate(g.g, cstr(rules), cstr(mitigations), format_of(format),
                                     text.out()),
                 text);
  }

  if (build->parsed()) {
    std::string question;
    if (!question_file.empty()) {
      if (int rc = read_or_fail(question_file, question)) return rc;
    } else if (!dfd_path.empty()) {
      Graph g;
      CString text;
      if (tf_status s = tf_graph_load(dfd_path.c_str(), &g.g); s != TF_OK) return report(s);
      if (tf_status s = tf_graph_render(g.g, text.out(), nullptr); s != TF_OK) return report(s);
      question = text.get();
    }
    CString sys, user;
    bool has_question = !question_file.empty() || !dfd_path.empty();
    tf_status s = tf_prompt_render(prompt_sel.c_str(), cstr(exemplars),
                                   has_question ? question.c_str() : nullptr,
                                   position == "end" ? TF_Q_END : TF_Q_BEGIN, sys.out(),
                                   user.out());
    if (s == TF_OK) std::cout << user.get() << "\n";
    return report(s);
  }

  if (optimize->parsed()) {
    tf_opro_options o;
    tf_opro_options_init(&o);
    o.scorer_backend = backend.c_str();
    o.optimizer_backend = cstr(optimizer_backend);
    o.dataset_path = dataset_path.c_str();
    o.split_seed = seed;
    o.metric = metric.c_str();
    o.seed_instruction = cstr(instruction);
    o.max_steps = max_steps;
    o.patience = patience;
    o.top_k = top_k;
    o.model = cstr(model);
    o.resume_path = cstr(resume);
    o.out_path = out.c_str();
    CString summary;
    tf_status s = tf_opro_optimize(&o, summary.out());
    std::cout << summary.get();
    return report(s);
  }

  if (run->parsed()) {
    tf_run_options o;
    tf_run_options_init(&o);
    o.backend = backend.c_str();
    o.prompt = prompt_sel.c_str();
    o.exemplars_path = cstr(exemplars);
    o.cues_path = cstr(cues);
    o.model = cstr(model);
    o.max_tokens = max_tokens;
    o.temperature = temperature;
    o.out_dir = out.c_str();
    CString result;
    if (!dataset_path.empty()) {
      Dataset d;
      if (tf_status s = tf_dataset_load(dataset_path.c_str(), &d.d); s != TF_OK)
        return report(s);
      std::string split_json;
      if (!split_file.empty())
        if (int rc = read_or_fail(split_file, split_json)) return rc;
      return print(tf_run_dataset(&o, d.d, cstr(split_json), part.c_str(), format_of(format),
                                  result.out()),
                   result);
    }
    std::string description;
    if (!dfd_path.empty()) {
      Graph g;
      CString text;
      if (tf_status s = tf_graph_load(dfd_path.c_str(), &g.g); s != TF_OK) return report(s);
      if (tf_status s = tf_graph_render(g.g, text.out(), nullptr); s != TF_OK) return report(s);
      description = text.get();
    } else if (!input_file.empty()) {
      if (int rc = read_or_fail(input_file, description)) return rc;
    } else {
      std::cerr << "threatforge: UsageError: run needs --input, --dfd or --dataset\n";
      return TF_E_USAGE;
    }
    return print(tf_run_text(&o, "input", description.c_str(), format_of(format),
                             result.out()),
                 result);
  }

  if (eval->parsed()) {
    tf_eval_options o;
    tf_eval_options_init(&o);
    o.similarity = similarity.c_str();
    o.model = cstr(embed_model);
    o.allow_fallback = allow_fallback ? 1 : 0;
    o.strict_codes = strict_codes ? 1 : 0;
    o.out_dir = cstr(out);
    CString result;
    return print(tf_evaluate_files(pred.c_str(), truth.c_str(), &o, format_of(format),
                                   result.out()),
                 result);
  }

  if (synth->parsed()) {
    Dataset d;
    if (tf_status s = tf_dataset_synthesize(seed, count, &d.d); s != TF_OK) return report(s);
    return report(tf_dataset_save(d.d, out.c_str()));
  }

  if (split->parsed()) {
    Dataset d;
    if (tf_status s = tf_dataset_load(dataset_path.c_str(), &d.d); s != TF_OK) return report(s);
    CString json;
    if (tf_status s = tf_dataset_split(d.d, seed, json.out()); s != TF_OK) return report(s);
    if (out.empty()) {
      std::cout << json.get();
      return 0;
    }
    std::error_code ec;
    if (auto parent = std::filesystem::path(out).parent_path(); !parent.empty())
      std::filesystem::create_directories(parent, ec);
    std::ofstream f(out, std::ios::binary | std::ios::trunc);
    f << json.get();
    f.close();
    if (!f) {
      std::cerr << "threatforge: IoError: cannot write " << out << "\n";
      return TF_E_SCHEMA;
    }
    return 0;
  }

  if (exp->parsed()) {
    Dataset d;
    if (tf_status s = tf_dataset_load(dataset_path.c_str(), &d.d); s != TF_OK) return report(s);
    std::string split_json;
    if (!split_file.empty())
      if (int rc = read_or_fail(split_file, split_json)) return rc;
    lora.target_modules = target_modules.c_str();
    lora.optimizer = optimizer_name.c_str();
    return report(
        tf_dataset_export_finetune(d.d, cstr(split_json), seed, &lora, out.c_str()));
  }

  std::cerr << app.help();
  return TF_E_USAGE;
}
