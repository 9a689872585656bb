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

/* C interface to the threatforge library.
 *
 * Conventions:
 *  - Every fallible call returns tf_status. On failure the thread-local
 *    tf_last_error_message() and tf_last_error_kind() describe the error.
 *  - Strings returned through char** are heap-allocated UTF-8 and must be
 *    released with tf_string_free().
 *  - Handles are opaque and released with their *_free function. Freeing
 *    NULL is a no-op.
 */

#ifndef THREATFORGE_THREATFORGE_H_
#define THREATFORGE_THREATFORGE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TF_BUILDING_LIBRARY)
#    define TF_API __declspec(dllexport)
#  else
#    define TF_API __declspec(dllimport)
#  endif
#else
#  define TF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tf_status {
  TF_OK = 0,
  TF_E_USAGE = 2,
  TF_E_BACKEND = 3,
  TF_E_SCHEMA = 4,
  TF_E_INTERNAL = 5
} tf_status;

typedef enum tf_format { TF_FORMAT_JSON = 0, TF_FORMAT_TEXT = 1 } tf_format;

typedef enum tf_position { TF_Q_BEGIN = 0, TF_Q_END = 1 } tf_position;

typedef struct tf_graph tf_graph;
typedef struct tf_backend tf_backend;
typedef struct tf_dataset tf_dataset;

TF_API const char* tf_version(void);

/* Message and error name ("UnknownReference", "ScriptExhausted", ...) of the
 * last failure on this thread; "" after a successful call. */
TF_API const char* tf_last_error_message(void);
TF_API const char* tf_last_error_kind(void);

TF_API void tf_string_free(char* s);

/* ---- data flow diagrams ---- */

TF_API tf_status tf_graph_parse(const char* source, size_t length, tf_graph** out);
TF_API tf_status tf_graph_load(const char* path, tf_graph** out);
TF_API void tf_graph_free(tf_graph* graph);

/* JSON: array of {kind, subject, message, line?, col?}, "[]" when valid.
 * Text: one line per diagnostic, empty when valid. */
TF_API tf_status tf_graph_validate(const tf_graph* graph, tf_format format,
                                   char** diagnostics);
TF_API tf_status tf_graph_render(const tf_graph* graph, char** text,
                                 size_t* token_count);
TF_API tf_status tf_graph_serialize(const tf_graph* graph, char** source);

/* STRIDE-per-element findings. rules_path and mitigations_path may be NULL
 * for the built-in tables. */
TF_API tf_status tf_oracle_enumerate(const tf_graph* graph, const char* rules_path,
                                     const char* mitigations_path, tf_format format,
                                     char** out);

/* ---- prompts and parsing ---- */

/* selector: initial | optimized | cot_zero | cot_few | template file path.
 * exemplars_path may be NULL for the built-in few-shot pairs. A NULL
 * question yields the bare instruction text; a blank one is an error. */
TF_API tf_status tf_prompt_render(const char* selector, const char* exemplars_path,
                                  const char* question, tf_position position,
                                  char** system_text, char** user_text);

/* Findings JSON extracted from free text. cues_path may be NULL. */
TF_API tf_status tf_parse_completion(const char* text, const char* cues_path,
                                     tf_format format, char** out);

/* Canonical control codes found in text, comma separated. */
TF_API tf_status tf_extract_codes(const char* text, char** codes);

/* ---- model backends ---- */

/* spec: "http:URL" or "mock:PATH". */
TF_API tf_status tf_backend_open(const char* spec, tf_backend** out);
TF_API void tf_backend_free(tf_backend* backend);
TF_API tf_status tf_backend_chat(tf_backend* backend, const char* system_text,
                                 const char* user_text, int max_tokens,
                                 double temperature, const char* model,
                                 char** completion);

/* ---- metrics ---- */

/* out[0..2] = precision, recall, accuracy. degenerate may be NULL. */
TF_API tf_status tf_set_metrics(const char* const* generated, size_t n_generated,
                                const char* const* truth, size_t n_truth,
                                int strict, double out[3], int* degenerate);

/* provider: "lexical" or "endpoint:URL". */
TF_API tf_status tf_text_similarity(const char* a, const char* b,
                                    const char* provider, double* out);

/* ---- datasets ---- */

TF_API tf_status tf_dataset_load(const char* path, tf_dataset** out);
TF_API tf_status tf_dataset_synthesize(uint64_t seed, size_t count, tf_dataset** out);
TF_API void tf_dataset_free(tf_dataset* dataset);
TF_API size_t tf_dataset_size(const tf_dataset* dataset);
TF_API tf_status tf_dataset_save(const tf_dataset* dataset, const char* path);
TF_API tf_status tf_dataset_split(const tf_dataset* dataset, uint64_t seed,
                                  char** split_json);

typedef struct tf_lora_options {
  int64_t r;
  double alpha;
  double dropout;
  const char* target_modules; /* comma separated */
  int64_t d;                  /* 0 when unknown */
  int64_t k;
  int batch_size;
  int grad_accum;
  const char* optimizer;
  double learning_rate;
  int epochs;
  double eval_interval_fraction;
} tf_lora_options;

TF_API void tf_lora_options_init(tf_lora_options* options);

/* split_json NULL: split with split_seed. Writes train.jsonl, test.jsonl and
 * manifest.json under out_dir. */
TF_API tf_status tf_dataset_export_finetune(const tf_dataset* dataset,
                                            const char* split_json, uint64_t split_seed,
                                            const tf_lora_options* options,
                                            const char* out_dir);

TF_API tf_status tf_lora_param_count(int64_t d, int64_t k, int64_t r, uint64_t* out);

/* ---- pipeline ---- */

typedef struct tf_run_options {
  const char* backend;        /* "http:URL" | "mock:PATH" */
  const char* prompt;         /* selector, see tf_prompt_render */
  const char* exemplars_path; /* NULL for built-ins */
  const char* cues_path;      /* NULL for built-ins */
  const char* model;          /* NULL: gpt-3.5-turbo */
  int max_tokens;             /* 0: 1024 */
  double temperature;
  const char* out_dir;        /* NULL: nothing written */
} tf_run_options;

TF_API void tf_run_options_init(tf_run_options* options);

/* Runs one description and writes findings.json and findings.txt. Nothing is
 * written when the backend fails. report receives the findings in `format`. */
TF_API tf_status tf_run_text(const tf_run_options* options, const char* id,
                             const char* description, tf_format format,
                             char** report);

/* Runs every sample, or only the `part` ("train" | "test") of split_json. */
TF_API tf_status tf_run_dataset(const tf_run_options* options, const tf_dataset* dataset,
                                const char* split_json, const char* part,
                                tf_format format, char** report);

typedef struct tf_eval_options {
  const char* similarity; /* "lexical" | "endpoint:URL"; NULL: lexical */
  const char* model;      /* embedding model id; NULL for the default */
  int allow_fallback;     /* use lexical when the endpoint fails */
  int strict_codes;       /* compare enhancements */
  const char* out_dir;    /* NULL: nothing written */
} tf_eval_options;

TF_API void tf_eval_options_init(tf_eval_options* options);

/* Scores a findings report against a dataset; writes report.json and
 * report.txt. */
TF_API tf_status tf_evaluate_files(const char* predictions_path, const char* truth_path,
                                   const tf_eval_options* options, tf_format format,
                                   char** report);

typedef struct tf_opro_options {
  const char* scorer_backend;
  const char* optimizer_backend; /* NULL: same as scorer */
  const char* dataset_path;
  uint64_t split_seed;
  const char* metric;           /* accuracy | precision | recall */
  const char* seed_instruction; /* NULL: initial prompt */
  int max_steps;
  int patience;
  int top_k;
  const char* model; /* NULL: gpt-3.5-turbo */
  const char* resume_path;
  const char* out_path; /* trajectory JSONL */
} tf_opro_options;

TF_API void tf_opro_options_init(tf_opro_options* options);

/* Writes the trajectory and fills summary_json with {best_score,
 * best_instruction, steps, history, stopped_early}. Both happen also when a
 * backend error stops the loop early; the status then reports that error. */
TF_API tf_status tf_opro_optimize(const tf_opro_options* options, char** summary_json);

#ifdef __cplusplus
}
#endif

#endif /* THREATFORGE_THREATFORGE_H_ */
