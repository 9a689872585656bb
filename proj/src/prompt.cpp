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

#include "prompt.hpp"

#include <cctype>

#include <json.hpp>

#include "dfd.hpp"
#include "error.hpp"
#include "list_file.hpp"
#include "parser.hpp"
#include "stride.hpp"

namespace threatforge::prompt {
namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += kSeparator;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> exemplar_blocks(const std::vector<Exemplar>& exemplars) {
  std::vector<std::string> out;
  for (const auto& e : exemplars)
    out.push_back(std::string(kExampleLabel) + "\n" + e.question + "\n" +
                  std::string(kAnswerLabel) + "\n" + e.answer);
  return out;
}

void check(const PromptTemplate& t) {
  if (t.instruction.empty())
    throw Error(Errc::kInvalidArgument, "prompt instruction is empty");
  if (t.exemplars.size() != 0 && t.exemplars.size() != 2)
    throw Error(Errc::kExemplarArity,
                "prompt templates carry zero or two exemplars, got " +
                    std::to_string(t.exemplars.size()));
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

// Bundled diagrams the few-shot examples are generated from. Kept in sync
// with data/fixtures/exemplar_*.dfd.
constexpr std::string_view kExemplarAtm = R"(dfd "ATM Cash Withdrawal" {
  external "ATM Customer" {}
  process "Dispense Cash" { running_as = network_service }
  boundary "Branch Network" contains ["Dispense Cash"]
  flow "Withdrawal Request" from "ATM Customer" to "Dispense Cash" { crosses = ["Branch Network"] }
}
)";

constexpr std::string_view kExemplarStatements = R"(dfd "Monthly Statements" {
  process "Statement Generator" { isolation = app_container }
  store "Statement Archive" {}
  flow "Archive Statement" from "Statement Generator" to "Statement Archive"
}
)";

}  // namespace

PromptTemplate build_initial_prompt() {
  PromptTemplate t;
  t.instruction = std::string(kInitialInstruction);
  return t;
}

PromptTemplate build_optimized_prompt() {
  PromptTemplate t;
  t.instruction = std::string(kOptimizedInstruction);
  return t;
}

PromptTemplate build_cot_prompt(CotMode mode, std::vector<Exemplar> exemplars,
                                PromptTemplate base) {
  if (mode == CotMode::kFewShot && exemplars.size() != 2)
    throw Error(Errc::kExemplarArity,
                "few-shot prompting needs exactly two exemplars, got " +
                    std::to_string(exemplars.size()));
  base.reasoning_directive = std::string(kReasoningDirective);
  base.exemplars = mode == CotMode::kFewShot ? std::move(exemplars)
                                             : std::vector<Exemplar>{};
  return base;
}

RenderedPrompt render_instruction(const PromptTemplate& tmpl) {
  check(tmpl);
  std::vector<std::string> parts{tmpl.instruction};
  if (tmpl.reasoning_directive) parts.push_back(*tmpl.reasoning_directive);
  for (auto& b : exemplar_blocks(tmpl.exemplars)) parts.push_back(std::move(b));
  return {std::string(kSystemText), join(parts)};
}

RenderedPrompt position_instruction(const PromptTemplate& tmpl,
                                    std::string_view question) {
  check(tmpl);
  if (question.empty())
    throw Error(Errc::kEmptyQuestion, "question text is empty");

  std::string head = tmpl.instruction;
  if (tmpl.reasoning_directive)
    head += std::string(kSeparator) + *tmpl.reasoning_directive;
  auto blocks = exemplar_blocks(tmpl.exemplars);

  if (tmpl.layout) {
    std::string text = *tmpl.layout;
    replace_all(text, "{{instruction}}", head);
    replace_all(text, "{{exemplars}}", join(blocks));
    replace_all(text, "{{question}}", question);
    return {std::string(kSystemText), std::move(text)};
  }

  std::vector<std::string> parts;
  if (tmpl.position == Position::kQEnd) parts.emplace_back(question);
  parts.push_back(head);
  for (auto& b : blocks) parts.push_back(std::move(b));
  if (tmpl.position == Position::kQBegin) parts.emplace_back(question);
  return {std::string(kSystemText), join(parts)};
}

PromptTemplate load_template_file(const std::string& path) {
  std::string body = read_text_file(path);
  while (!body.empty() && (body.back() == '\n' || body.back() == '\r' ||
                           body.back() == ' '))
    body.pop_back();
  PromptTemplate t;
  bool templated = body.find("{{question}}") != std::string::npos ||
                   body.find("{{exemplars}}") != std::string::npos ||
                   body.find("{{instruction}}") != std::string::npos;
  if (!templated) {
    t.instruction = body;
  } else {
    // The instruction is the text that precedes the first placeholder.
    t.layout = body;
    t.instruction = body.substr(0, body.find("{{"));
    while (!t.instruction.empty() &&
           std::isspace(static_cast<unsigned char>(t.instruction.back())))
      t.instruction.pop_back();
    if (t.instruction.empty()) t.instruction = body;
  }
  if (t.instruction.empty())
    throw Error(Errc::kSchemaError, "prompt template " + path + " is empty");
  return t;
}

std::vector<Exemplar> load_exemplars(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kSchemaError, path + ": " + e.what());
  }
  if (!j.is_array())
    throw Error(Errc::kSchemaError, path + ": expected a JSON array");
  std::vector<Exemplar> out;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("question") ||
        !item.contains("answer") || !item["question"].is_string() ||
        !item["answer"].is_string())
      throw Error(Errc::kSchemaError,
                  path + ": exemplar needs string 'question' and 'answer'");
    out.push_back({item["question"].get<std::string>(),
                   item["answer"].get<std::string>()});
  }
  return out;
}

std::string exemplars_to_json(const std::vector<Exemplar>& exemplars) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& e : exemplars)
    j.push_back({{"question", e.question}, {"answer", e.answer}});
  return j.dump(2) + "\n";
}

const std::vector<Exemplar>& default_exemplars() {
  static const std::vector<Exemplar> kExemplars = [] {
    std::vector<Exemplar> out;
    for (auto src : {kExemplarAtm, kExemplarStatements}) {
      auto graph = dfd::parse(src);
      auto findings = stride::enumerate_threats(graph);
      out.push_back({dfd::render_description(graph).text,
                     parse::format_findings(findings)});
    }
    return out;
  }();
  return kExemplars;
}

PromptTemplate select_prompt(std::string_view selector,
                             const std::vector<Exemplar>& exemplars) {
  if (selector == "initial") return build_initial_prompt();
  if (selector == "optimized") return build_optimized_prompt();
  if (selector == "cot_zero") return build_cot_prompt(CotMode::kZeroShot);
  if (selector == "cot_few") return build_cot_prompt(CotMode::kFewShot, exemplars);
  return load_template_file(std::string(selector));
}

}  // namespace threatforge::prompt
