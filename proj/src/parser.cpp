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

#include "parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <tuple>

#include "error.hpp"
#include "list_file.hpp"

namespace threatforge::parse {
namespace {

char lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_word(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool iprefix_at(std::string_view text, std::size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > text.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (lower(text[pos + i]) != lower(prefix[i])) return false;
  return true;
}

bool word_start(std::string_view text, std::size_t pos) {
  return pos == 0 || !is_word(text[pos - 1]);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Trims whitespace plus emphasis and quote debris left around sections.
std::string clean(std::string_view s) {
  auto junk = [](char c) { return is_space(c) || c == '*' || c == '_'; };
  while (!s.empty() && junk(s.front())) s.remove_prefix(1);
  while (!s.empty() && junk(s.back())) s.remove_suffix(1);
  return std::string(s);
}

// ---------------------------------------------------------------------------
// Category names

struct NameForm {
  std::vector<std::string_view> words;
  Category category;
};

const std::vector<NameForm>& name_forms() {
  static const std::vector<NameForm> kForms = {
      {{"information", "disclosure"}, Category::kInformationDisclosure},
      {{"denial", "of", "service"}, Category::kDenialOfService},
      {{"elevation", "of", "privilege"}, Category::kElevationOfPrivilege},
      {{"spoofing"}, Category::kSpoofing},
      {{"tampering"}, Category::kTampering},
      {{"repudiation"}, Category::kRepudiation},
  };
  return kForms;
}

// Category name starting exactly at `pos`; returns the end offset.
std::optional<std::pair<Category, std::size_t>> category_at(std::string_view text,
                                                            std::size_t pos) {
  if (!word_start(text, pos)) return std::nullopt;
  for (const auto& form : name_forms()) {
    std::size_t p = pos;
    bool ok = true;
    for (std::size_t w = 0; w < form.words.size() && ok; ++w) {
      if (w > 0) {
        std::size_t q = p;
        while (q < text.size() && (text[q] == ' ' || text[q] == '-')) ++q;
        if (q == p) ok = false;
        p = q;
      }
      if (ok && iprefix_at(text, p, form.words[w]))
        p += form.words[w].size();
      else
        ok = false;
    }
    if (!ok) continue;
    if (form.category == Category::kElevationOfPrivilege && p < text.size() &&
        lower(text[p]) == 's')
      ++p;
    if (p < text.size() && is_alpha(text[p])) continue;
    return std::make_pair(form.category, p);
  }
  return std::nullopt;
}

std::optional<Category> first_category(std::string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!is_alpha(text[i]) || !word_start(text, i)) continue;
    if (auto hit = category_at(text, i)) return hit->first;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Lines and headings

struct Line {
  std::size_t begin;
  std::size_t end;  // excludes the newline
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back({start, end});
    start = end + 1;
  }
  return lines;
}

std::size_t skip_blanks(std::string_view text, std::size_t p, std::size_t end) {
  while (p < end && is_blank(text[p])) ++p;
  return p;
}

std::size_t skip_emphasis(std::string_view text, std::size_t p, std::size_t end) {
  while (p < end && (text[p] == '*' || text[p] == '_')) ++p;
  return skip_blanks(text, p, end);
}

// Skips indentation, markdown heading marks, a list marker and emphasis.
// `had_marker` reports whether a numbered or bulleted marker was present.
std::size_t skip_markers(std::string_view text, const Line& line,
                         bool* had_marker = nullptr) {
  std::size_t p = skip_blanks(text, line.begin, line.end);
  while (p < line.end && text[p] == '#') ++p;
  p = skip_blanks(text, p, line.end);
  bool marker = false;
  std::size_t q = p;
  while (q < line.end && is_digit(text[q])) ++q;
  if (q > p && q < line.end && (text[q] == '.' || text[q] == ')')) {
    p = skip_blanks(text, q + 1, line.end);
    marker = true;
  } else if (p < line.end && (text[p] == '-' || text[p] == '+' ||
                              (text[p] == '*' && p + 1 < line.end &&
                               is_blank(text[p + 1])))) {
    p = skip_blanks(text, p + 1, line.end);
    marker = true;
  } else if (line.end - p >= 3 && text.substr(p, 3) == "\xE2\x80\xA2") {
    p = skip_blanks(text, p + 3, line.end);
    marker = true;
  }
  if (had_marker) *had_marker = marker;
  return skip_emphasis(text, p, line.end);
}

// Skips separator punctuation that follows a heading's category.
std::size_t skip_heading_tail(std::string_view text, std::size_t p, std::size_t end) {
  while (p < end && (is_blank(text[p]) || text[p] == '*' || text[p] == '_' ||
                     text[p] == ':' || text[p] == ')' || text[p] == '-' ||
                     text[p] == '.'))
    ++p;
  return p;
}

std::optional<Category> letter_category(std::string_view text, std::size_t p,
                                        std::size_t end, std::size_t* after) {
  if (p >= end) return std::nullopt;
  std::size_t q = p;
  bool paren = text[q] == '(';
  if (paren) ++q;
  if (q >= end || !std::isupper(static_cast<unsigned char>(text[q])))
    return std::nullopt;
  auto cat = category_from_letter(text[q]);
  if (!cat) return std::nullopt;
  ++q;
  if (paren) {
    if (q >= end || text[q] != ')') return std::nullopt;
    ++q;
  } else if (q < end && !(text[q] == ':' || text[q] == ')' || text[q] == '.' ||
                          is_blank(text[q]))) {
    return std::nullopt;
  }
  *after = q;
  return cat;
}

struct Heading {
  Category category;
  std::size_t body;  // where the heading line's own text continues
};

std::optional<Heading> heading_of(std::string_view text, const Line& line) {
  std::size_t p = skip_markers(text, line);
  if (p >= line.end) return std::nullopt;

  static constexpr std::string_view kLabels[] = {
      "threat type", "threat category", "stride category", "category"};
  for (auto label : kLabels) {
    if (!iprefix_at(text, p, label)) continue;
    std::size_t q = skip_emphasis(text, p + label.size(), line.end);
    if (q >= line.end || text[q] != ':') continue;
    q = skip_emphasis(text, q + 1, line.end);
    if (auto hit = category_at(text, q)) {
      std::size_t after = hit->second;
      // "Threat Type: S (Spoofing)" style suffixes are part of the label.
      std::size_t r = skip_blanks(text, after, line.end);
      if (r < line.end && text[r] == '(') {
        std::size_t close = text.find(')', r);
        if (close != std::string_view::npos && close < line.end) after = close + 1;
      }
      return Heading{hit->first, skip_heading_tail(text, after, line.end)};
    }
    std::size_t after = 0;
    if (auto cat = letter_category(text, q, line.end, &after)) {
      std::size_t r = skip_blanks(text, after, line.end);
      if (r < line.end && text[r] == '(') {
        std::size_t close = text.find(')', r);
        if (close != std::string_view::npos && close < line.end) after = close + 1;
      }
      return Heading{*cat, skip_heading_tail(text, after, line.end)};
    }
    return std::nullopt;
  }

  if (auto hit = category_at(text, p))
    return Heading{hit->first, skip_heading_tail(text, hit->second, line.end)};

  std::size_t after = 0;
  if (auto cat = letter_category(text, p, line.end, &after)) {
    // A bare letter only counts when punctuated: "S:", "(S)", "S)".
    if (after < line.end && is_blank(text[after]) && text[p] != '(')
      return std::nullopt;
    if (after == line.end && text[p] != '(') return std::nullopt;
    std::size_t q = skip_heading_tail(text, after, line.end);
    if (auto named = category_at(text, q); named && named->first == *cat)
      q = skip_heading_tail(text, named->second, line.end);
    return Heading{*cat, q};
  }
  return std::nullopt;
}

bool contains_ci(std::string_view hay, std::string_view needle) {
  for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i)
    if (iprefix_at(hay, i, needle)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Sections inside a block

struct Cue {
  std::size_t at;       // where the section starts (cue word or label line)
  std::size_t content;  // where its text starts
};

// Cue at the start of a line and followed closely by a colon, searched
// within [from, end).
std::optional<Cue> labeled_cue(std::string_view text, std::size_t from,
                               std::size_t end,
                               const std::vector<std::string>& cues) {
  for (const auto& line : split_lines(text.substr(0, end))) {
    if (line.end <= from) continue;
    std::size_t p = skip_markers(text, line);
    if (p < from) continue;
    for (const auto& cue : cues) {
      if (!iprefix_at(text, p, cue)) continue;
      std::size_t colon = text.find(':', p);
      if (colon == std::string_view::npos || colon >= line.end ||
          colon - p > 40)
        continue;
      return Cue{line.begin, colon + 1};
    }
  }
  return std::nullopt;
}

std::optional<Cue> inline_cue(std::string_view text, std::size_t from,
                              std::size_t end,
                              const std::vector<std::string>& cues) {
  for (std::size_t i = from; i < end; ++i) {
    if (!is_alpha(text[i]) || !word_start(text, i)) continue;
    for (const auto& cue : cues) {
      if (!iprefix_at(text, i, cue)) continue;
      std::size_t content = i;
      for (std::size_t j = i; j < end && j - i <= 40; ++j) {
        if (text[j] == '\n' || text[j] == '.') break;
        if (text[j] == ':') {
          content = j + 1;
          break;
        }
      }
      return Cue{i, content};
    }
  }
  return std::nullopt;
}

std::optional<Cue> find_cue(std::string_view text, std::size_t from,
                            std::size_t end,
                            const std::vector<std::string>& cues) {
  if (auto c = labeled_cue(text, from, end, cues)) return c;
  return inline_cue(text, from, end, cues);
}

struct Block {
  std::size_t begin;
  std::size_t end;
  std::size_t body;  // text after the heading label, or begin
  std::optional<Category> heading;
};

Span trimmed_span(std::string_view text, std::size_t begin, std::size_t end) {
  while (begin < end && is_space(text[begin])) ++begin;
  while (end > begin && is_space(text[end - 1])) --end;
  return {begin, end - begin};
}

std::string finding_key(const stride::ThreatFinding& f) {
  std::string key(1, category_letter(f.category));
  key += '|';
  key += f.codes.joined(",");
  key += '|';
  for (char c : f.description) key.push_back(lower(c));
  return key;
}

}  // namespace

// ---------------------------------------------------------------------------

CodeScan extract_codes(std::string_view text, nist::CompareMode mode) {
  CodeScan scan{nist::CodeSet(mode), {}};
  std::set<std::string> warned;
  for (std::size_t i = 0; i + 3 < text.size(); ++i) {
    if (!is_alpha(text[i]) || !is_alpha(text[i + 1]) || text[i + 2] != '-')
      continue;
    if (i > 0 && (is_word(text[i - 1]) || text[i - 1] == '-')) continue;
    std::size_t p = i + 3;
    std::size_t digits = p;
    while (p < text.size() && is_digit(text[p])) ++p;
    if (p == digits) continue;
    std::size_t end = p;
    // Optional enhancement, tolerating one blank before the parenthesis.
    std::size_t q = p;
    if (q < text.size() && text[q] == ' ') ++q;
    if (q < text.size() && text[q] == '(') {
      std::size_t r = q + 1;
      while (r < text.size() && is_digit(text[r])) ++r;
      if (r > q + 1 && r < text.size() && text[r] == ')') end = r + 1;
    }
    if (end < text.size() && is_word(text[end])) continue;
    auto code = nist::try_normalize_code(text.substr(i, end - i));
    if (!code) continue;
    scan.codes.insert(*code);
    if (!nist::find_family(code->family) && warned.insert(code->family).second)
      scan.warnings.push_back("unknown control family in " + code->text());
    i = end - 1;
  }
  return scan;
}

CueConfig CueConfig::parse(std::string_view text) {
  CueConfig cfg;
  bool seen_desc = false, seen_mit = false, seen_code = false;
  int line_no = 0;
  for (const auto& line : split_lines(text)) {
    ++line_no;
    std::string_view s = trim(text.substr(line.begin, line.end - line.begin));
    if (s.empty() || s.front() == '#') continue;
    std::size_t colon = s.find(':');
    if (colon == std::string_view::npos)
      throw Error(Errc::kSchemaError, "expected 'section: cue'",
                  SourceLoc{line_no, 1});
    std::string_view section = trim(s.substr(0, colon));
    std::string cue(trim(s.substr(colon + 1)));
    if (cue.empty())
      throw Error(Errc::kSchemaError, "empty cue", SourceLoc{line_no, 1});
    auto take = [&](std::vector<std::string>& list, bool& seen) {
      if (!seen) list.clear();
      seen = true;
      list.push_back(cue);
    };
    if (section == "description") take(cfg.description, seen_desc);
    else if (section == "mitigation") take(cfg.mitigation, seen_mit);
    else if (section == "code") take(cfg.codes, seen_code);
    else
      throw Error(Errc::kSchemaError,
                  "unknown cue section '" + std::string(section) + "'",
                  SourceLoc{line_no, 1});
  }
  return cfg;
}

CueConfig CueConfig::load(const std::string& path) {
  return parse(read_text_file(path));
}

ParsedOutput parse_findings(std::string_view text, const CueConfig& cues) {
  ParsedOutput out;
  if (trim(text).empty()) return out;

  auto lines = split_lines(text);
  std::vector<Block> blocks;
  std::size_t preamble_end = text.size();

  // (1) Category headings.
  for (const auto& line : lines) {
    if (auto h = heading_of(text, line)) {
      if (!blocks.empty()) blocks.back().end = line.begin;
      else preamble_end = line.begin;
      blocks.push_back({line.begin, text.size(), h->body, h->category});
    }
  }
  // (2) Numbered or bulleted items mentioning a threat.
  if (blocks.empty()) {
    for (const auto& line : lines) {
      bool marker = false;
      skip_markers(text, line, &marker);
      if (!marker ||
          !contains_ci(text.substr(line.begin, line.end - line.begin), "threat"))
        continue;
      if (!blocks.empty()) blocks.back().end = line.begin;
      else preamble_end = line.begin;
      blocks.push_back({line.begin, text.size(), line.begin, std::nullopt});
    }
  }
  // (3) Whole text as one block.
  if (blocks.empty()) {
    preamble_end = 0;
    blocks.push_back({0, text.size(), 0, std::nullopt});
  }

  if (Span pre = trimmed_span(text, 0, preamble_end); pre.length > 0)
    out.unparsed_spans.push_back(pre);

  std::set<std::string> seen;
  for (const auto& b : blocks) {
    Span span = trimmed_span(text, b.begin, b.end);
    if (span.length == 0) continue;
    std::string_view block = text.substr(0, b.end);

    std::optional<Category> cat = b.heading;
    if (!cat) cat = first_category(text.substr(b.begin, b.end - b.begin));
    if (!cat) {
      out.unparsed_spans.push_back(span);
      out.warnings.push_back("no STRIDE category in block at offset " +
                             std::to_string(span.offset));
      continue;
    }

    auto mit = find_cue(block, b.body, b.end, cues.mitigation);
    auto code = find_cue(block, mit ? mit->content : b.body, b.end, cues.codes);
    std::size_t desc_end = b.end;
    if (mit) desc_end = std::min(desc_end, mit->at);
    if (code) desc_end = std::min(desc_end, code->at);

    std::size_t desc_begin = b.body;
    if (auto d = labeled_cue(block, b.body, desc_end, cues.description);
        d && trim(text.substr(b.body, d->at - std::min(d->at, b.body))).empty())
      desc_begin = d->content;

    stride::ThreatFinding f;
    f.category = *cat;
    if (desc_begin < desc_end)
      f.description = clean(text.substr(desc_begin, desc_end - desc_begin));
    if (mit) {
      std::size_t mit_end = (code && code->at > mit->at) ? code->at : b.end;
      if (mit->content < mit_end)
        f.mitigation = clean(text.substr(mit->content, mit_end - mit->content));
    }
    auto scan = extract_codes(text.substr(b.begin, b.end - b.begin));
    f.codes = std::move(scan.codes);
    for (auto& w : scan.warnings) out.warnings.push_back(std::move(w));

    if (!seen.insert(finding_key(f)).second) continue;
    out.findings.push_back(std::move(f));
    out.finding_spans.push_back(span);
  }
  return out;
}

std::string format_findings(std::span<const stride::ThreatFinding> findings) {
  auto one_line = [](std::string_view s) {
    std::string out;
    for (char c : s) out.push_back(c == '\n' || c == '\r' ? ' ' : c);
    return out;
  };
  std::string out;
  for (std::size_t i = 0; i < findings.size(); ++i) {
    const auto& f = findings[i];
    if (i) out += "\n\n";
    out += "Threat Type: ";
    out += category_name(f.category);
    out += "\nDescription: " + one_line(f.description);
    out += "\nMitigation: " + one_line(f.mitigation);
    out += "\nNIST: " + (f.codes.empty() ? std::string("none") : f.codes.joined());
  }
  return out;
}

}  // namespace threatforge::parse
