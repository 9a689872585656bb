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

#include "dfd.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace threatforge::dfd {

const Element* Graph::find_element(std::string_view name) const {
  for (const auto& e : elements)
    if (e.name == name) return &e;
  return nullptr;
}

const Boundary* Graph::find_boundary(std::string_view name) const {
  for (const auto& b : boundaries)
    if (b.name == name) return &b;
  return nullptr;
}

const Boundary* Graph::boundary_of(std::string_view element) const {
  for (const auto& b : boundaries)
    if (std::find(b.contains.begin(), b.contains.end(), element) !=
        b.contains.end())
      return &b;
  return nullptr;
}

std::string_view diagnostic_name(DiagnosticKind kind) {
  switch (kind) {
    case DiagnosticKind::kEmptyTitle: return "EmptyTitle";
    case DiagnosticKind::kNoElements: return "NoElements";
    case DiagnosticKind::kDuplicateId: return "DuplicateId";
    case DiagnosticKind::kUnknownReference: return "UnknownReference";
    case DiagnosticKind::kBoundaryOverlap: return "BoundaryOverlap";
    case DiagnosticKind::kSelfLoop: return "SelfLoop";
  }
  return "Unknown";
}

std::string_view kind_keyword(ElementKind kind) {
  switch (kind) {
    case ElementKind::kExternalEntity: return "external";
    case ElementKind::kProcess: return "process";
    case ElementKind::kDataStore: return "store";
  }
  return "process";
}

std::string_view kind_label(ElementKind kind) {
  switch (kind) {
    case ElementKind::kExternalEntity: return "External entity";
    case ElementKind::kProcess: return "Process";
    case ElementKind::kDataStore: return "Data store";
  }
  return "Process";
}

// ---------------------------------------------------------------------------
// Validation

namespace {

enum class Group { kGraph, kElement, kFlow, kBoundary };

struct Ranked {
  Group group;
  Diagnostic diag;
};

}  // namespace

std::vector<Diagnostic> validate(const Graph& graph) {
  std::vector<Ranked> found;
  auto add = [&](Group g, DiagnosticKind k, std::string subject,
                 std::string message) {
    found.push_back({g, {k, std::move(subject), std::move(message), {}}});
  };

  if (graph.title.empty())
    add(Group::kGraph, DiagnosticKind::kEmptyTitle, "dfd", "title is empty");
  if (graph.elements.empty())
    add(Group::kGraph, DiagnosticKind::kNoElements, "dfd",
        "graph declares no elements");

  std::set<std::string> seen;
  auto check_dup = [&](Group g, const std::string& id) {
    if (!seen.insert(id).second)
      add(g, DiagnosticKind::kDuplicateId, id, "duplicate id \"" + id + "\"");
  };
  for (const auto& e : graph.elements) check_dup(Group::kElement, e.name);
  for (const auto& f : graph.flows) check_dup(Group::kFlow, f.name);
  for (const auto& b : graph.boundaries) check_dup(Group::kBoundary, b.name);

  for (const auto& f : graph.flows) {
    for (const auto* end : {&f.source, &f.sink}) {
      if (!graph.find_element(*end))
        add(Group::kFlow, DiagnosticKind::kUnknownReference, f.name,
            "flow \"" + f.name + "\" references unknown element \"" + *end +
                "\"");
    }
    for (const auto& b : f.crosses) {
      if (!graph.find_boundary(b))
        add(Group::kFlow, DiagnosticKind::kUnknownReference, f.name,
            "flow \"" + f.name + "\" crosses unknown boundary \"" + b + "\"");
    }
    if (f.source == f.sink && !f.self_loop)
      add(Group::kFlow, DiagnosticKind::kSelfLoop, f.name,
          "flow \"" + f.name + "\" starts and ends at \"" + f.source +
              "\" without self_loop = true");
    if (f.source != f.sink && f.self_loop)
      add(Group::kFlow, DiagnosticKind::kSelfLoop, f.name,
          "flow \"" + f.name + "\" is marked self_loop but its endpoints differ");
  }

  std::map<std::string, std::string> owner;
  for (const auto& b : graph.boundaries) {
    for (const auto& id : b.contains) {
      if (!graph.find_element(id)) {
        add(Group::kBoundary, DiagnosticKind::kUnknownReference, b.name,
            "boundary \"" + b.name + "\" contains unknown element \"" + id +
                "\"");
        continue;
      }
      auto [it, inserted] = owner.emplace(id, b.name);
      if (!inserted && it->second != b.name)
        add(Group::kElement, DiagnosticKind::kBoundaryOverlap, id,
            "element \"" + id + "\" belongs to boundaries \"" + it->second +
                "\" and \"" + b.name + "\"");
    }
  }

  std::stable_sort(found.begin(), found.end(),
                   [](const Ranked& a, const Ranked& b) {
                     return std::tie(a.group, a.diag.subject) <
                            std::tie(b.group, b.diag.subject);
                   });
  std::vector<Diagnostic> out;
  out.reserve(found.size());
  for (auto& r : found) out.push_back(std::move(r.diag));
  return out;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  kIdent,
  kString,
  kLBrace,
  kRBrace,
  kLBracket,
  kRBracket,
  kComma,
  kEquals,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  SourceLoc loc;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    SourceLoc at{line_, col_};
    if (pos_ >= src_.size()) return {Tok::kEnd, "", at};
    char c = src_[pos_];
    switch (c) {
      case '{': advance(); return {Tok::kLBrace, "{", at};
      case '}': advance(); return {Tok::kRBrace, "}", at};
      case '[': advance(); return {Tok::kLBracket, "[", at};
      case ']': advance(); return {Tok::kRBracket, "]", at};
      case ',': advance(); return {Tok::kComma, ",", at};
      case '=': advance(); return {Tok::kEquals, "=", at};
      case '"': return {Tok::kString, read_string(at), at};
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string ident;
      while (pos_ < src_.size()) {
        char d = src_[pos_];
        if (!(std::isalnum(static_cast<unsigned char>(d)) || d == '_')) break;
        ident.push_back(d);
        advance();
      }
      return {Tok::kIdent, ident, at};
    }
    throw Error(Errc::kSyntaxError,
                std::string("unexpected character '") + c + "'", at);
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string read_string(SourceLoc start) {
    advance();  // opening quote
    std::string out;
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n')
        throw Error(Errc::kSyntaxError, "unterminated string", start);
      char c = src_[pos_];
      if (c == '"') {
        advance();
        return out;
      }
      if (c == '\\') {
        SourceLoc esc{line_, col_};
        advance();
        if (pos_ >= src_.size())
          throw Error(Errc::kSyntaxError, "unterminated string", start);
        char e = src_[pos_];
        switch (e) {
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          default:
            throw Error(Errc::kSyntaxError,
                        std::string("unknown escape '\\") + e + "'", esc);
        }
        advance();
        continue;
      }
      out.push_back(c);
      advance();
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

struct Ref {
  std::string name;
  SourceLoc loc;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { shift(); }

  Graph run() {
    expect_keyword("dfd");
    Token title = expect(Tok::kString, "graph title");
    graph_.title = title.text;
    if (graph_.title.empty())
      throw Error(Errc::kInvalidGraph, "title is empty", title.loc);
    expect(Tok::kLBrace, "'{'");
    while (cur_.kind != Tok::kRBrace) {
      if (cur_.kind == Tok::kEnd)
        throw Error(Errc::kSyntaxError, "missing closing '}'", cur_.loc);
      statement();
    }
    shift();
    if (cur_.kind != Tok::kEnd)
      throw Error(Errc::kSyntaxError, "trailing input after graph", cur_.loc);
    resolve();
    return std::move(graph_);
  }

 private:
  void shift() { cur_ = lex_.next(); }

  Token expect(Tok kind, std::string_view what) {
    if (cur_.kind != kind)
      throw Error(Errc::kSyntaxError,
                  "expected " + std::string(what) + ", found '" + cur_.text +
                      "'",
                  cur_.loc);
    Token t = cur_;
    shift();
    return t;
  }

  void expect_keyword(std::string_view word) {
    if (cur_.kind != Tok::kIdent || cur_.text != word)
      throw Error(Errc::kSyntaxError,
                  "expected '" + std::string(word) + "', found '" + cur_.text +
                      "'",
                  cur_.loc);
    shift();
  }

  void declare(const Token& name) {
    if (!declared_.insert(name.text).second)
      throw Error(Errc::kDuplicateId, "duplicate id \"" + name.text + "\"",
                  name.loc);
  }

  void statement() {
    Token head = expect(Tok::kIdent, "statement keyword");
    const std::string& kw = head.text;
    if (kw == "external" || kw == "process" || kw == "store") {
      Element e;
      e.kind = kw == "external"  ? ElementKind::kExternalEntity
               : kw == "process" ? ElementKind::kProcess
                                 : ElementKind::kDataStore;
      Token name = expect(Tok::kString, "element name");
      declare(name);
      e.name = name.text;
      if (cur_.kind == Tok::kLBrace) element_body(e);
      graph_.elements.push_back(std::move(e));
    } else if (kw == "boundary") {
      Token name = expect(Tok::kString, "boundary name");
      declare(name);
      Boundary b;
      b.name = name.text;
      std::vector<Ref> members;
      if (cur_.kind == Tok::kIdent && cur_.text == "contains") {
        shift();
        members = string_list();
      }
      if (cur_.kind == Tok::kLBrace) {
        shift();
        if (cur_.kind != Tok::kRBrace)
          throw Error(Errc::kUnknownAttribute,
                      "boundary takes no attributes, found '" + cur_.text +
                          "'",
                      cur_.loc);
        shift();
      }
      for (auto& m : members) b.contains.push_back(m.name);
      boundary_refs_.push_back(std::move(members));
      graph_.boundaries.push_back(std::move(b));
    } else if (kw == "flow") {
      Token name = expect(Tok::kString, "flow name");
      declare(name);
      Flow f;
      f.name = name.text;
      expect_keyword("from");
      Token src = expect(Tok::kString, "source element");
      expect_keyword("to");
      Token dst = expect(Tok::kString, "sink element");
      f.source = src.text;
      f.sink = dst.text;
      FlowRefs refs{name.loc, {src.text, src.loc}, {dst.text, dst.loc}, {}};
      if (cur_.kind == Tok::kLBrace) flow_body(f, refs);
      flow_refs_.push_back(std::move(refs));
      graph_.flows.push_back(std::move(f));
    } else {
      throw Error(Errc::kSyntaxError, "unknown statement '" + kw + "'",
                  head.loc);
    }
  }

  // Visits `key = value` pairs inside braces, comma separated.
  template <typename Fn>
  void key_values(Fn&& on_pair) {
    expect(Tok::kLBrace, "'{'");
    std::set<std::string> keys;
    while (cur_.kind != Tok::kRBrace) {
      Token key = expect(Tok::kIdent, "attribute key");
      if (!keys.insert(key.text).second)
        throw Error(Errc::kSyntaxError, "duplicate key '" + key.text + "'",
                    key.loc);
      expect(Tok::kEquals, "'='");
      on_pair(key);
      if (cur_.kind == Tok::kComma) {
        shift();
      } else if (cur_.kind != Tok::kRBrace) {
        throw Error(Errc::kSyntaxError,
                    "expected ',' or '}', found '" + cur_.text + "'",
                    cur_.loc);
      }
    }
    shift();
  }

  Token enum_value() {
    if (cur_.kind != Tok::kIdent)
      throw Error(Errc::kSyntaxError,
                  "expected attribute value, found '" + cur_.text + "'",
                  cur_.loc);
    Token t = cur_;
    shift();
    return t;
  }

  [[noreturn]] static void bad_value(const Token& key, const Token& value) {
    throw Error(Errc::kUnknownAttribute,
                "unknown value '" + value.text + "' for '" + key.text + "'",
                value.loc);
  }

  void element_body(Element& e) {
    key_values([&](const Token& key) {
      Token v = enum_value();
      auto& a = e.attributes;
      if (key.text == "running_as") {
        if (v.text == "none") a.running_as = RunningAs::kNone;
        else if (v.text == "network_service") a.running_as = RunningAs::kNetworkService;
        else if (v.text == "kernel_system_local_admin") a.running_as = RunningAs::kKernelSystemLocalAdmin;
        else if (v.text == "other") a.running_as = RunningAs::kOther;
        else bad_value(key, v);
      } else if (key.text == "isolation") {
        if (v.text == "none") a.isolation = Isolation::kNone;
        else if (v.text == "app_container") a.isolation = Isolation::kAppContainer;
        else if (v.text == "other") a.isolation = Isolation::kOther;
        else bad_value(key, v);
      } else if (key.text == "accepts_input_from") {
        if (v.text == "none") a.accepts_input_from = InputSource::kNone;
        else if (v.text == "kernel_system_local_admin") a.accepts_input_from = InputSource::kKernelSystemLocalAdmin;
        else if (v.text == "any") a.accepts_input_from = InputSource::kAny;
        else if (v.text == "other") a.accepts_input_from = InputSource::kOther;
        else bad_value(key, v);
      } else {
        throw Error(Errc::kUnknownAttribute,
                    "unknown element attribute '" + key.text + "'", key.loc);
      }
    });
  }

  struct FlowRefs {
    SourceLoc at;
    Ref source;
    Ref sink;
    std::vector<Ref> crosses;
  };

  void flow_body(Flow& f, FlowRefs& refs) {
    key_values([&](const Token& key) {
      if (key.text == "crosses") {
        refs.crosses = string_list();
        for (const auto& r : refs.crosses) f.crosses.push_back(r.name);
      } else if (key.text == "self_loop") {
        Token v = enum_value();
        if (v.text == "true") f.self_loop = true;
        else if (v.text == "false") f.self_loop = false;
        else bad_value(key, v);
      } else {
        throw Error(Errc::kUnknownAttribute,
                    "unknown flow attribute '" + key.text + "'", key.loc);
      }
    });
  }

  std::vector<Ref> string_list() {
    expect(Tok::kLBracket, "'['");
    std::vector<Ref> out;
    while (cur_.kind != Tok::kRBracket) {
      Token s = expect(Tok::kString, "quoted name");
      out.push_back({s.text, s.loc});
      if (cur_.kind == Tok::kComma) {
        shift();
      } else if (cur_.kind != Tok::kRBracket) {
        throw Error(Errc::kSyntaxError,
                    "expected ',' or ']', found '" + cur_.text + "'",
                    cur_.loc);
      }
    }
    shift();
    return out;
  }

  // Reference checks run after the whole file is read so declarations may
  // appear in any order.
  void resolve() {
    if (graph_.elements.empty())
      throw Error(Errc::kInvalidGraph, "graph declares no elements",
                  SourceLoc{1, 1});
    for (std::size_t i = 0; i < graph_.flows.size(); ++i) {
      const auto& f = graph_.flows[i];
      const auto& r = flow_refs_[i];
      for (const Ref* end : {&r.source, &r.sink})
        if (!graph_.find_element(end->name))
          throw Error(Errc::kUnknownReference,
                      "unknown element \"" + end->name + "\"", end->loc);
      for (const auto& b : r.crosses)
        if (!graph_.find_boundary(b.name))
          throw Error(Errc::kUnknownReference,
                      "unknown boundary \"" + b.name + "\"", b.loc);
      if ((f.source == f.sink) != f.self_loop)
        throw Error(Errc::kInvalidGraph,
                    f.self_loop ? "self_loop flow has distinct endpoints"
                                : "flow from an element to itself requires "
                                  "self_loop = true",
                    r.at);
    }
    std::map<std::string, std::string> owner;
    for (std::size_t i = 0; i < graph_.boundaries.size(); ++i) {
      const auto& b = graph_.boundaries[i];
      for (const auto& m : boundary_refs_[i]) {
        if (!graph_.find_element(m.name))
          throw Error(Errc::kUnknownReference,
                      "unknown element \"" + m.name + "\"", m.loc);
        auto [it, inserted] = owner.emplace(m.name, b.name);
        if (!inserted && it->second != b.name)
          throw Error(Errc::kInvalidGraph,
                      "element \"" + m.name + "\" already belongs to boundary \"" +
                          it->second + "\"",
                      m.loc);
      }
    }
    auto diags = validate(graph_);
    if (!diags.empty())
      throw Error(Errc::kInvalidGraph, diags.front().message);
  }

  Lexer lex_;
  Token cur_;
  Graph graph_;
  std::set<std::string> declared_;
  std::vector<FlowRefs> flow_refs_;
  std::vector<std::vector<Ref>> boundary_refs_;
};

}  // namespace

Graph parse(std::string_view source) { return Parser(source).run(); }

Graph load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIoError, "cannot open DFD file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

// ---------------------------------------------------------------------------
// Writer

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

std::string quote_list(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += quote(items[i]);
  }
  out += "]";
  return out;
}

std::string_view running_as_token(RunningAs v) {
  switch (v) {
    case RunningAs::kNone: return "none";
    case RunningAs::kNetworkService: return "network_service";
    case RunningAs::kKernelSystemLocalAdmin: return "kernel_system_local_admin";
    case RunningAs::kOther: return "other";
  }
  return "none";
}

std::string_view isolation_token(Isolation v) {
  switch (v) {
    case Isolation::kNone: return "none";
    case Isolation::kAppContainer: return "app_container";
    case Isolation::kOther: return "other";
  }
  return "none";
}

std::string_view input_token(InputSource v) {
  switch (v) {
    case InputSource::kNone: return "none";
    case InputSource::kKernelSystemLocalAdmin: return "kernel_system_local_admin";
    case InputSource::kAny: return "any";
    case InputSource::kOther: return "other";
  }
  return "none";
}

}  // namespace

std::string serialize(const Graph& graph) {
  std::ostringstream out;
  out << "dfd " << quote(graph.title) << " {\n";
  for (const auto& e : graph.elements) {
    out << "  " << kind_keyword(e.kind) << " " << quote(e.name) << " {";
    std::vector<std::string> kv;
    const auto& a = e.attributes;
    if (a.running_as != RunningAs::kNone)
      kv.push_back("running_as = " + std::string(running_as_token(a.running_as)));
    if (a.isolation != Isolation::kNone)
      kv.push_back("isolation = " + std::string(isolation_token(a.isolation)));
    if (a.accepts_input_from != InputSource::kNone)
      kv.push_back("accepts_input_from = " +
                   std::string(input_token(a.accepts_input_from)));
    for (std::size_t i = 0; i < kv.size(); ++i)
      out << (i ? ", " : " ") << kv[i];
    out << (kv.empty() ? "}" : " }") << "\n";
  }
  for (const auto& b : graph.boundaries)
    out << "  boundary " << quote(b.name) << " contains "
        << quote_list(b.contains) << "\n";
  for (const auto& f : graph.flows) {
    out << "  flow " << quote(f.name) << " from " << quote(f.source) << " to "
        << quote(f.sink);
    std::vector<std::string> kv;
    if (!f.crosses.empty()) kv.push_back("crosses = " + quote_list(f.crosses));
    if (f.self_loop) kv.push_back("self_loop = true");
    if (!kv.empty()) {
      out << " {";
      for (std::size_t i = 0; i < kv.size(); ++i)
        out << (i ? ", " : " ") << kv[i];
      out << " }";
    }
    out << "\n";
  }
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Rendering

std::size_t count_tokens(std::string_view text) {
  std::size_t n = 0;
  bool in_token = false;
  for (char c : text) {
    bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_token) ++n;
    in_token = !space;
  }
  return n;
}

namespace {

std::string counted(std::size_t n, std::string_view one, std::string_view many) {
  if (n == 0) return "no " + std::string(many);
  return std::to_string(n) + " " + std::string(n == 1 ? one : many);
}

std::string join_clauses(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += (i + 1 == parts.size()) ? " and " : ", ";
    out += parts[i];
  }
  return out;
}

std::string quoted_names(const std::vector<std::string>& names) {
  std::vector<std::string> q;
  for (const auto& n : names) q.push_back("\"" + n + "\"");
  return join_clauses(q);
}

}  // namespace

SystemDescription render_description(const Graph& graph) {
  auto diags = validate(graph);
  if (!diags.empty())
    throw Error(Errc::kInvalidGraph,
                "cannot render invalid graph: " + diags.front().message);

  std::ostringstream out;
  out << "The system \"" << graph.title
      << "\" is modeled as a data flow diagram with "
      << counted(graph.elements.size(), "element", "elements") << ", "
      << counted(graph.flows.size(), "data flow", "data flows") << " and "
      << counted(graph.boundaries.size(), "trust boundary", "trust boundaries")
      << ".";

  for (const auto& e : graph.elements) {
    std::vector<std::string> clauses;
    const auto& a = e.attributes;
    switch (a.running_as) {
      case RunningAs::kNone: break;
      case RunningAs::kNetworkService: clauses.push_back("runs as network service"); break;
      case RunningAs::kKernelSystemLocalAdmin: clauses.push_back("runs as kernel, system or local admin"); break;
      case RunningAs::kOther: clauses.push_back("runs under a custom account"); break;
    }
    switch (a.isolation) {
      case Isolation::kNone: break;
      case Isolation::kAppContainer: clauses.push_back("uses AppContainer isolation"); break;
      case Isolation::kOther: clauses.push_back("uses a custom isolation level"); break;
    }
    switch (a.accepts_input_from) {
      case InputSource::kNone: break;
      case InputSource::kKernelSystemLocalAdmin: clauses.push_back("accepts input only from kernel, system or local admin"); break;
      case InputSource::kAny: clauses.push_back("accepts input from any source"); break;
      case InputSource::kOther: clauses.push_back("accepts input from other sources"); break;
    }
    if (const Boundary* b = graph.boundary_of(e.name))
      clauses.push_back("sits inside trust boundary \"" + b->name + "\"");
    if (clauses.empty()) clauses.push_back("is part of the system");
    out << " " << kind_label(e.kind) << " \"" << e.name << "\" "
        << join_clauses(clauses) << ".";
  }

  for (const auto& f : graph.flows) {
    out << " Data flow \"" << f.name << "\" carries data from \"" << f.source
        << "\"";
    if (f.self_loop)
      out << " back to itself";
    else
      out << " to \"" << f.sink << "\"";
    if (!f.crosses.empty())
      out << ", crossing trust "
          << (f.crosses.size() == 1 ? "boundary " : "boundaries ")
          << quoted_names(f.crosses);
    out << ".";
  }

  SystemDescription d;
  d.text = out.str();
  d.token_count = count_tokens(d.text);
  return d;
}

}  // namespace threatforge::dfd
