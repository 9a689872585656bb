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

#include "gateway.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdlib>
#include <thread>

#include <json.hpp>

#include "error.hpp"
#include "http.hpp"
#include "list_file.hpp"

namespace threatforge::llm {

BackendSpec parse_backend_arg(std::string_view arg) {
  BackendSpec spec;
  if (arg.starts_with("mock:")) {
    spec.kind = BackendKind::kMock;
    spec.script_path = std::string(arg.substr(5));
    spec.max_in_flight = 1;
    if (spec.script_path.empty())
      throw Error(Errc::kUsage, "mock backend needs a script path");
  } else if (arg.starts_with("http:")) {
    spec.kind = BackendKind::kHttp;
    spec.endpoint = std::string(arg.substr(5));
    if (spec.endpoint.find("://") == std::string::npos)
      throw Error(Errc::kUsage, "http backend needs a URL, e.g. "
                                "http:https://api.openai.com/v1");
  } else {
    throw Error(Errc::kUsage, "backend must be 'http:URL' or 'mock:PATH', got '" +
                                  std::string(arg) + "'");
  }
  return spec;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(Errc::kInternal, "SHA-256 computation failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

// ---------------------------------------------------------------------------

MockScript MockScript::parse(std::string_view text) {
  MockScript script;
  int line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    auto fail = [&](const std::string& what) {
      throw Error(Errc::kScriptSyntax, what, SourceLoc{line_no, 1});
    };
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail(std::string("invalid JSON: ") + e.what());
    }
    if (!rec.is_object()) fail("record must be a JSON object");
    for (const auto& [k, v] : rec.items())
      if (k != "mode" && k != "key" && k != "response" && k != "note")
        fail("unknown field '" + k + "'");
    if (!rec.contains("mode") || !rec["mode"].is_string()) fail("missing 'mode'");
    if (!rec.contains("response") || !rec["response"].is_string())
      fail("missing string 'response'");
    std::string mode = rec["mode"];
    std::string response = rec["response"];
    if (mode == "seq") {
      if (rec.contains("key")) fail("sequence records take no 'key'");
      script.sequence_.push_back(std::move(response));
    } else if (mode == "key") {
      if (!rec.contains("key") || !rec["key"].is_string()) fail("missing 'key'");
      std::string key = rec["key"];
      for (auto& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if (key.size() != 64 || key.find_first_not_of("0123456789abcdef") != std::string::npos)
        fail("key must be a SHA-256 hex digest");
      if (!script.keyed_.emplace(key, std::move(response)).second)
        fail("duplicate key " + key);
    } else {
      fail("mode must be 'seq' or 'key'");
    }
  }
  return script;
}

MockScript MockScript::load(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path.string());
  } catch (const Error& e) {
    throw Error(Errc::kIoError, e.what());
  }
  return parse(text);
}

BackendSpec register_mock(const std::filesystem::path& script) {
  MockScript::load(script);
  BackendSpec spec;
  spec.kind = BackendKind::kMock;
  spec.script_path = script;
  spec.max_in_flight = 1;
  return spec;
}

Attempt MockBackend::complete(const ChatRequest& request) {
  auto it = script_.keyed().find(sha256_hex(request.user_text));
  if (it != script_.keyed().end()) return {it->second, 200, false, {}};
  std::lock_guard lock(mu_);
  if (next_ >= script_.sequence().size())
    throw Error(Errc::kScriptExhausted,
                "mock script exhausted after " + std::to_string(next_) +
                    " sequence responses");
  return {script_.sequence()[next_++], 200, false, {}};
}

// ---------------------------------------------------------------------------

HttpBackend::HttpBackend(std::string endpoint, std::string api_key_env)
    : endpoint_(std::move(endpoint)), api_key_env_(std::move(api_key_env)) {}

Attempt HttpBackend::complete(const ChatRequest& request) {
  std::vector<std::pair<std::string, std::string>> headers;
  if (!api_key_env_.empty()) {
    const char* key = std::getenv(api_key_env_.c_str());
    if (!key || !*key)
      throw Error(Errc::kMissingApiKey,
                  "environment variable " + api_key_env_ + " is not set");
    headers.emplace_back("Authorization", std::string("Bearer ") + key);
  }

  nlohmann::ordered_json body = {
      {"model", request.model_id},
      {"messages",
       nlohmann::ordered_json::array(
           {{{"role", "system"}, {"content", request.system_text}},
            {{"role", "user"}, {"content", request.user_text}}})},
      {"max_tokens", request.max_tokens},
      {"temperature", request.temperature},
  };
  auto res = http::post_json(endpoint_, "/chat/completions", body.dump(), headers);

  Attempt a;
  a.status = res.status;
  if (res.status == 0) {
    a.retryable = true;
    a.detail = res.error;
    return a;
  }
  if (res.status == 429 || res.status >= 500) {
    a.retryable = true;
    a.detail = "HTTP " + std::to_string(res.status);
    return a;
  }
  if (res.status != 200) {
    a.detail = "HTTP " + std::to_string(res.status);
    return a;
  }
  try {
    auto j = nlohmann::json::parse(res.body);
    const auto& content = j.at("choices").at(0).at("message").at("content");
    a.text = content.is_null() ? std::string() : content.get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    a.detail = std::string("malformed completion response: ") + e.what();
  }
  return a;
}

// ---------------------------------------------------------------------------

namespace {

std::unique_ptr<Backend> make_backend(const BackendSpec& spec) {
  if (spec.kind == BackendKind::kMock)
    return std::make_unique<MockBackend>(MockScript::load(spec.script_path));
  return std::make_unique<HttpBackend>(spec.endpoint, spec.api_key_env);
}

}  // namespace

Gateway::Gateway(const BackendSpec& spec)
    : Gateway(make_backend(spec), spec.retry, spec.max_in_flight) {}

Gateway::Gateway(std::unique_ptr<Backend> backend, RetryPolicy retry,
                 int max_in_flight, Sleeper sleeper)
    : backend_(std::move(backend)),
      retry_(retry),
      max_in_flight_(max_in_flight),
      sleeper_(std::move(sleeper)) {
  if (max_in_flight_ < 1)
    throw Error(Errc::kInvalidArgument, "max_in_flight must be positive");
  if (retry_.max_attempts < 1)
    throw Error(Errc::kInvalidArgument, "max_attempts must be positive");
  if (!sleeper_)
    sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

int Gateway::peak_in_flight() const {
  std::lock_guard lock(mu_);
  return peak_;
}

std::string Gateway::send_chat(const ChatRequest& request) {
  if (request.max_tokens <= 0)
    throw Error(Errc::kInvalidArgument, "max_tokens must be positive");
  if (!std::isfinite(request.temperature) || request.temperature < 0)
    throw Error(Errc::kInvalidArgument, "temperature must be finite and >= 0");

  {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return in_flight_ < max_in_flight_; });
    ++in_flight_;
    peak_ = std::max(peak_, in_flight_);
  }
  struct Release {
    Gateway* g;
    ~Release() {
      {
        std::lock_guard lock(g->mu_);
        --g->in_flight_;
      }
      g->cv_.notify_one();
    }
  } release{this};

  Attempt last;
  for (int attempt = 1; attempt <= retry_.max_attempts; ++attempt) {
    last = backend_->complete(request);
    if (last.text) return *last.text;
    if (!last.retryable || attempt == retry_.max_attempts) {
      throw Error(Errc::kBackendFailure,
                  "backend failed (status " + std::to_string(last.status) +
                      ", attempts " + std::to_string(attempt) + "): " +
                      last.detail);
    }
    sleeper_(retry_.base_backoff * (1 << (attempt - 1)));
  }
  throw Error(Errc::kBackendFailure, "backend failed: " + last.detail);
}

}  // namespace threatforge::llm
