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

#ifndef THREATFORGE_PROMPT_HPP_
#define THREATFORGE_PROMPT_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace threatforge::prompt {

inline constexpr std::string_view kInitialInstruction =
    "The STRIDE model is a systematic approach to identifying and analyzing "
    "potential security threats to a system. It helps in reasoning about and "
    "discovering threats by leveraging a comprehensive model of the target "
    "system, which includes detailed representations of processes, data "
    "stores, data flows, and trust boundaries. In this task, you will be "
    "provided with a description of a data flow diagram (DFD) for a specific "
    "application. Based on the provided DFD description, your objective is to "
    "identify all relevant security threats. For each identified threat, "
    "please specify the threat type, a detailed description of the threat, "
    "recommended mitigation strategies, and the corresponding mitigation code "
    "according to NIST SP 800-53 controls.";

inline constexpr std::string_view kOptimizedInstruction =
    "Generate a comprehensive list of identified threats, effective "
    "mitigation strategies, and corresponding NIST SP 800-53 control codes "
    "for all interactions, processes, and entities depicted in the system "
    "diagrams.";

inline constexpr std::string_view kReasoningDirective =
    "Reason step by step: list elements, then per-element STRIDE categories, "
    "then threats, mitigations, and NIST SP 800-53 codes.";

inline constexpr std::string_view kSystemText =
    "You are a cybersecurity expert performing STRIDE threat modeling for "
    "banking systems.";

inline constexpr std::string_view kSeparator = "\n\n";
inline constexpr std::string_view kExampleLabel = "Example:";
inline constexpr std::string_view kAnswerLabel = "Answer:";

// Where the instruction goes relative to the question.
enum class Position { kQBegin, kQEnd };

struct Exemplar {
  std::string question;
  std::string answer;

  bool operator==(const Exemplar&) const = default;
};

struct PromptTemplate {
  std::string instruction;
  Position position = Position::kQBegin;
  std::vector<Exemplar> exemplars;  // zero or two
  std::optional<std::string> reasoning_directive;
  // Full user-text layout from a template file, with {{instruction}},
  // {{exemplars}} and {{question}} placeholders.
  std::optional<std::string> layout;
};

struct RenderedPrompt {
  std::string system_text;
  std::string user_text;

  bool operator==(const RenderedPrompt&) const = default;
};

PromptTemplate build_initial_prompt();
PromptTemplate build_optimized_prompt();

enum class CotMode { kZeroShot, kFewShot };

// Adds the reasoning directive to `base`; few-shot also embeds exactly two
// exemplars (Error{kExemplarArity} otherwise).
PromptTemplate build_cot_prompt(CotMode mode, std::vector<Exemplar> exemplars = {},
                                PromptTemplate base = build_initial_prompt());

// Q_begin: instruction, directive, exemplars, question. Q_end: question first.
// Parts are joined by one blank line. Throws kEmptyQuestion.
RenderedPrompt position_instruction(const PromptTemplate& tmpl,
                                    std::string_view question);

// Rendering without a question: instruction, directive and exemplars only.
RenderedPrompt render_instruction(const PromptTemplate& tmpl);

// Plain-text template file. Without placeholders the file body is the
// instruction; with placeholders it becomes the layout.
PromptTemplate load_template_file(const std::string& path);

// JSON array of {"question": ..., "answer": ...}.
std::vector<Exemplar> load_exemplars(const std::string& path);
std::string exemplars_to_json(const std::vector<Exemplar>& exemplars);

// Two worked examples derived from oracle output on small bundled diagrams.
const std::vector<Exemplar>& default_exemplars();

// initial | optimized | cot_zero | cot_few | <path to template file>.
PromptTemplate select_prompt(std::string_view selector,
                             const std::vector<Exemplar>& exemplars = default_exemplars());

}  // namespace threatforge::prompt

#endif  // THREATFORGE_PROMPT_HPP_
