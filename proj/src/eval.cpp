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

#include "eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "error.hpp"
#include "http.hpp"

namespace threatforge::eval {

SetMetrics set_metrics(const nist::CodeSet& generated, const nist::CodeSet& truth) {
  if (generated.mode() != truth.mode())
    throw Error(Errc::kModeMismatch, "code sets use different comparison modes");
  SetMetrics m;
  if (generated.empty() && truth.empty()) return {1, 1, 1, false};
  if (generated.empty()) return m;
  if (truth.empty()) {
    m.degenerate = true;
    return m;
  }
  const double inter = static_cast<double>(generated.intersection_size(truth));
  const double gen = static_cast<double>(generated.size());
  const double tru = static_cast<double>(truth.size());
  m.precision = inter / gen;
  m.recall = inter / tru;
  m.accuracy = inter / (gen + tru - inter);
  return m;
}

// ---------------------------------------------------------------------------

SimilarityProvider SimilarityProvider::embedding(std::string endpoint) {
  SimilarityProvider p;
  p.kind = Kind::kEmbeddingEndpoint;
  p.endpoint = std::move(endpoint);
  return p;
}

SimilarityProvider SimilarityProvider::parse(std::string_view arg) {
  if (arg == "lexical") return lexical();
  if (arg.starts_with("endpoint:")) {
    std::string url(arg.substr(9));
    if (url.find("://") == std::string::npos)
      throw Error(Errc::kUsage, "similarity endpoint needs a URL, got '" + url + "'");
    return embedding(std::move(url));
  }
  throw Error(Errc::kUsage, "similarity must be 'lexical' or 'endpoint:URL', got '" +
                                std::string(arg) + "'");
}

std::string SimilarityProvider::describe() const {
  return kind == Kind::kLexicalFallback ? "lexical" : "endpoint:" + endpoint;
}

namespace {

std::map<std::string, double> term_frequencies(std::string_view text) {
  std::map<std::string, double> tf;
  std::string term;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    unsigned char c = i < text.size() ? static_cast<unsigned char>(text[i]) : ' ';
    if (std::isalnum(c)) {
      term.push_back(static_cast<char>(std::tolower(c)));
    } else if (!term.empty()) {
      tf[term] += 1;
      term.clear();
    }
  }
  return tf;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

double lexical_cosine(std::string_view a, std::string_view b) {
  auto ta = term_frequencies(a);
  auto tb = term_frequencies(b);
  double dot = 0, na = 0, nb = 0;
  for (const auto& [t, n] : ta) {
    na += n * n;
    if (auto it = tb.find(t); it != tb.end()) dot += n * it->second;
  }
  for (const auto& [t, n] : tb) nb += n * n;
  if (na == 0 || nb == 0) return 0.0;
  return std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    throw Error(Errc::kEndpointFailure, "embedding dimensions differ");
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
}

std::vector<std::vector<double>> fetch_embeddings(const std::string& endpoint,
                                                  const std::string& model,
                                                  const std::vector<std::string>& texts) {
  nlohmann::ordered_json body = {{"model", model}, {"input", texts}};
  auto res = http::post_json(endpoint, "/embeddings", body.dump(), {});
  if (res.status == 0)
    throw Error(Errc::kEndpointFailure, "embedding endpoint unreachable: " + res.error);
  if (res.status != 200)
    throw Error(Errc::kEndpointFailure,
                "embedding endpoint returned HTTP " + std::to_string(res.status));

  std::vector<std::vector<double>> out;
  try {
    auto j = nlohmann::json::parse(res.body);
    for (const auto& item : j.at("data")) {
      auto v = item.at("embedding").get<std::vector<double>>();
      if (v.empty() || !std::all_of(v.begin(), v.end(),
                                    [](double x) { return std::isfinite(x); }))
        throw Error(Errc::kEndpointFailure, "embedding vector is empty or not finite");
      out.push_back(std::move(v));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kEndpointFailure,
                std::string("malformed embeddings response: ") + e.what());
  }
  if (out.size() != texts.size())
    throw Error(Errc::kEndpointFailure,
                "embedding endpoint returned " + std::to_string(out.size()) +
                    " vectors for " + std::to_string(texts.size()) + " inputs");
  for (const auto& v : out)
    if (v.size() != out.front().size())
      throw Error(Errc::kEndpointFailure, "embedding dimensions differ");
  return out;
}

Similarity text_similarity_ex(std::string_view a, std::string_view b,
                              const SimilarityProvider& provider) {
  if (blank(a) || blank(b))
    throw Error(Errc::kEmptyText, "similarity needs two non-empty texts");
  if (provider.kind == SimilarityProvider::Kind::kLexicalFallback)
    return {lexical_cosine(a, b), false};
  try {
    auto v = fetch_embeddings(provider.endpoint, provider.model,
                              {std::string(a), std::string(b)});
    return {cosine(v[0], v[1]), false};
  } catch (const Error& e) {
    if (e.code() != Errc::kEndpointFailure || !provider.fallback_on_failure) throw;
    return {lexical_cosine(a, b), true};
  }
}

std::string findings_text(const std::vector<stride::ThreatFinding>& findings) {
  std::string out;
  for (const auto& f : findings) {
    if (!out.empty()) out += '\n';
    out += f.description;
    if (!f.mitigation.empty()) {
      out += '\n';
      out += f.mitigation;
    }
  }
  return out;
}

SampleScore evaluate_sample(std::string sample_id, const parse::ParsedOutput& parsed,
                            const std::vector<stride::ThreatFinding>& truth,
                            const SimilarityProvider& provider, nist::CompareMode mode) {
  if (truth.empty())
    throw Error(Errc::kEmptyInput, "sample '" + sample_id + "' has no ground truth");
  SampleScore s;
  s.sample_id = std::move(sample_id);
  s.generated = nist::CodeSet(mode);
  s.truth = nist::CodeSet(mode);
  for (const auto& f : parsed.findings)
    for (const auto& c : f.codes) s.generated.insert(c);
  for (const auto& f : truth)
    for (const auto& c : f.codes) s.truth.insert(c);

  auto m = set_metrics(s.generated, s.truth);
  s.precision = m.precision;
  s.recall = m.recall;
  s.accuracy = m.accuracy;
  if (parsed.findings.empty()) s.flags.push_back("empty_output");
  else if (s.generated.empty()) s.flags.push_back("empty_generated_codes");
  if (m.degenerate) s.flags.push_back("empty_truth_codes");

  std::string gen_text = findings_text(parsed.findings);
  std::string truth_text = findings_text(truth);
  if (blank(gen_text) || blank(truth_text)) {
    s.similarity = 0;
    s.flags.push_back("empty_text");
  } else {
    auto sim = text_similarity_ex(gen_text, truth_text, provider);
    s.similarity = sim.value;
    if (sim.fell_back) s.flags.push_back("similarity_fallback");
  }
  return s;
}

EvalReport aggregate(std::vector<SampleScore> scores, const SimilarityProvider& provider) {
  if (scores.empty()) throw Error(Errc::kEmptyInput, "no scores to aggregate");
  std::sort(scores.begin(), scores.end(), [](const SampleScore& a, const SampleScore& b) {
    return std::tie(a.sample_id, a.precision, a.recall, a.accuracy, a.similarity) <
           std::tie(b.sample_id, b.precision, b.recall, b.accuracy, b.similarity);
  });
  EvalReport r;
  r.n_samples = scores.size();
  for (const auto& s : scores) {
    r.macro.precision += s.precision;
    r.macro.recall += s.recall;
    r.macro.accuracy += s.accuracy;
    r.macro.similarity += s.similarity;
    if (s.generated.empty()) ++r.n_empty_generated;
  }
  const double n = static_cast<double>(r.n_samples);
  r.macro.precision /= n;
  r.macro.recall /= n;
  r.macro.accuracy /= n;
  r.macro.similarity /= n;
  r.per_sample = std::move(scores);
  r.similarity_provider = provider.describe();
  if (provider.kind == SimilarityProvider::Kind::kEmbeddingEndpoint)
    r.similarity_model = provider.model;
  return r;
}

std::string report_json(const EvalReport& report) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["aggregation"] = "macro";
  j["similarity"] = {{"provider", report.similarity_provider},
                     {"model", report.similarity_model.empty()
                                   ? ordered_json(nullptr)
                                   : ordered_json(report.similarity_model)}};
  j["counts"] = {{"n_samples", report.n_samples},
                 {"n_empty_generated", report.n_empty_generated}};
  j["macro"] = {{"precision", report.macro.precision},
                {"recall", report.macro.recall},
                {"accuracy", report.macro.accuracy},
                {"similarity", report.macro.similarity}};
  ordered_json rows = ordered_json::array();
  for (const auto& s : report.per_sample) {
    rows.push_back({{"sample_id", s.sample_id},
                    {"precision", s.precision},
                    {"recall", s.recall},
                    {"accuracy", s.accuracy},
                    {"similarity", s.similarity},
                    {"generated", s.generated.texts()},
                    {"truth", s.truth.texts()},
                    {"flags", s.flags}});
  }
  j["per_sample"] = std::move(rows);
  return j.dump(2) + "\n";
}

namespace {

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string report_table(const EvalReport& report) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"sample", "precision", "recall", "accuracy", "similarity", "|gen|",
                  "|truth|", "flags"});
  for (const auto& s : report.per_sample) {
    std::string flags;
    for (const auto& f : s.flags) flags += (flags.empty() ? "" : ",") + f;
    rows.push_back({s.sample_id, fixed4(s.precision), fixed4(s.recall),
                    fixed4(s.accuracy), fixed4(s.similarity),
                    std::to_string(s.generated.size()), std::to_string(s.truth.size()),
                    flags});
  }
  rows.push_back({"macro", fixed4(report.macro.precision), fixed4(report.macro.recall),
                  fixed4(report.macro.accuracy), fixed4(report.macro.similarity), "", "",
                  ""});

  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());

  std::ostringstream os;
  os << "aggregation: macro, similarity: " << report.similarity_provider;
  if (!report.similarity_model.empty()) os << " (" << report.similarity_model << ")";
  os << ", samples: " << report.n_samples
     << ", empty generated: " << report.n_empty_generated << "\n";
  for (std::size_t ri = 0; ri < rows.size(); ++ri) {
    std::string line;
    for (std::size_t i = 0; i < rows[ri].size(); ++i) {
      const auto& cell = rows[ri][i];
      std::string pad(width[i] - cell.size(), ' ');
      // Left-align text columns, right-align numbers.
      bool text_col = i == 0 || i + 1 == rows[ri].size();
      line += text_col ? cell + pad : pad + cell;
      if (i + 1 < rows[ri].size()) line += "  ";
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << "\n";
    if (ri == 0 || ri + 2 == rows.size()) {
      std::size_t total = 0;
      for (auto w : width) total += w + 2;
      os << std::string(total - 2, '-') << "\n";
    }
  }
  return os.str();
}

}  // namespace threatforge::eval
