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

// Data-flow diagram model and its block-structured description language.
//
//   dfd "Bank Account System" {
//     external "Bank Customer" {}
//     process  "Open Account" { running_as = network_service }
//     store    "Customer Account DB" {}
//     boundary "Internet" contains ["Bank Customer"]
//     flow "Account Request" from "Bank Customer" to "Open Account" {
//       crosses = ["Internet"]
//     }
//   }
//
// The quoted name of every element, flow and boundary is its identifier and
// must be unique across the whole graph.

#ifndef THREATFORGE_DFD_HPP_
#define THREATFORGE_DFD_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace threatforge::dfd {

enum class ElementKind { kExternalEntity, kProcess, kDataStore };

// Managed-setting knobs carried over from the threat modeling tool.
enum class RunningAs { kNone, kNetworkService, kKernelSystemLocalAdmin, kOther };
enum class Isolation { kNone, kAppContainer, kOther };
enum class InputSource { kNone, kKernelSystemLocalAdmin, kAny, kOther };

struct SecurityAttributes {
  RunningAs running_as = RunningAs::kNone;
  Isolation isolation = Isolation::kNone;
  InputSource accepts_input_from = InputSource::kNone;

  bool operator==(const SecurityAttributes&) const = default;
};

struct Element {
  std::string name;
  ElementKind kind = ElementKind::kProcess;
  SecurityAttributes attributes;

  bool operator==(const Element&) const = default;
};

struct Flow {
  std::string name;
  std::string source;
  std::string sink;
  std::vector<std::string> crosses;
  bool self_loop = false;

  bool operator==(const Flow&) const = default;
};

struct Boundary {
  std::string name;
  std::vector<std::string> contains;

  bool operator==(const Boundary&) const = default;
};

struct Graph {
  std::string title;
  std::vector<Element> elements;
  std::vector<Flow> flows;
  std::vector<Boundary> boundaries;

  const Element* find_element(std::string_view name) const;
  const Boundary* find_boundary(std::string_view name) const;
  // Boundary an element sits in, if any (first match).
  const Boundary* boundary_of(std::string_view element) const;

  bool operator==(const Graph&) const = default;
};

enum class DiagnosticKind {
  kEmptyTitle,
  kNoElements,
  kDuplicateId,
  kUnknownReference,
  kBoundaryOverlap,
  kSelfLoop,
};

std::string_view diagnostic_name(DiagnosticKind kind);

struct Diagnostic {
  DiagnosticKind kind;
  std::string subject;  // offending id, or "dfd" for graph-level problems
  std::string message;
  std::optional<SourceLoc> loc;
};

// Empty iff every graph invariant holds. Order: graph-level problems, then
// element problems by id, then flow problems by id, then boundary problems.
std::vector<Diagnostic> validate(const Graph& graph);

// Throws Error{kSyntaxError | kUnknownReference | kDuplicateId |
// kUnknownAttribute | kInvalidGraph}, located at the offending token.
Graph parse(std::string_view source);
Graph load(const std::string& path);

// Canonical writer; parse(serialize(g)) == g.
std::string serialize(const Graph& graph);

struct SystemDescription {
  std::string text;
  std::size_t token_count = 0;
};

std::size_t count_tokens(std::string_view text);

// Prose rendering of a valid graph in declaration order. Throws kInvalidGraph.
SystemDescription render_description(const Graph& graph);

std::string_view kind_keyword(ElementKind kind);
std::string_view kind_label(ElementKind kind);

}  // namespace threatforge::dfd

#endif  // THREATFORGE_DFD_HPP_
