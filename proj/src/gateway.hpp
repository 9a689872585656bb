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

// Chat-completion gateway over OpenAI-compatible HTTP endpoints and a
// scripted deterministic mock.
//
// Mock script: one JSON record per line,
//   {"mode": "seq", "response": "..."}
//   {"mode": "key", "key": "<sha256 hex of user_text>", "response": "..."}
// Keyed records answer any request whose user text hashes to the key and may
// be replayed; every other request consumes the next sequence record.

#ifndef THREATFORGE_GATEWAY_HPP_
#define THREATFORGE_GATEWAY_HPP_

#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace threatforge::llm {

struct ChatRequest {
  std::string system_text;
  std::string user_text;
  int max_tokens = 1024;
  double temperature = 0.0;
  std::string model_id = "gpt-3.5-turbo";
};

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds base_backoff{500};
};

enum class BackendKind { kHttp, kMock };

inline constexpr std::string_view kDefaultApiKeyEnv = "THREATFORGE_API_KEY";

struct BackendSpec {
  BackendKind kind = BackendKind::kMock;
  std::string endpoint;                                // http
  std::string api_key_env{kDefaultApiKeyEnv};          // http; name only
  std::filesystem::path script_path;                   // mock
  int max_in_flight = 4;
  RetryPolicy retry;
};

// "http:URL" or "mock:PATH". Throws Error{kUsage}.
BackendSpec parse_backend_arg(std::string_view arg);

std::string sha256_hex(std::string_view data);

class MockScript {
 public:
  // Throws Error{kScriptSyntax}.
  static MockScript parse(std::string_view text);
  static MockScript load(const std::filesystem::path& path);

  const std::vector<std::string>& sequence() const { return sequence_; }
  const std::map<std::string, std::string>& keyed() const { return keyed_; }

 private:
  std::vector<std::string> sequence_;
  std::map<std::string, std::string> keyed_;
};

// Validates the script and returns a mock spec for it.
BackendSpec register_mock(const std::filesystem::path& script);

// One attempt against a backend.
struct Attempt {
  std::optional<std::string> text;
  int status = 0;
  bool retryable = false;
  std::string detail;
};

class Backend {
 public:
  virtual ~Backend() = default;
  virtual Attempt complete(const ChatRequest& request) = 0;
};

class MockBackend : public Backend {
 public:
  explicit MockBackend(MockScript script) : script_(std::move(script)) {}
  // Throws Error{kScriptExhausted} when a sequence lookup runs dry.
  Attempt complete(const ChatRequest& request) override;

 private:
  MockScript script_;
  std::mutex mu_;
  std::size_t next_ = 0;
};

class HttpBackend : public Backend {
 public:
  HttpBackend(std::string endpoint, std::string api_key_env);
  // Throws Error{kMissingApiKey} before any network I/O.
  Attempt complete(const ChatRequest& request) override;

 private:
  std::string endpoint_;
  std::string api_key_env_;
};

class Gateway {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  explicit Gateway(const BackendSpec& spec);
  Gateway(std::unique_ptr<Backend> backend, RetryPolicy retry, int max_in_flight,
          Sleeper sleeper = {});

  // Retries transport failures, 5xx and 429 with exponential backoff.
  // Throws Error{kBackendFailure | kScriptExhausted | kMissingApiKey |
  // kInvalidArgument}.
  std::string send_chat(const ChatRequest& request);

  int max_in_flight() const { return max_in_flight_; }
  int peak_in_flight() const;

 private:
  std::unique_ptr<Backend> backend_;
  RetryPolicy retry_;
  int max_in_flight_;
  Sleeper sleeper_;

  mutable std::mutex mu_;
  std::condition_variable cv_;
  int in_flight_ = 0;
  int peak_ = 0;
};

inline std::string send_chat(const ChatRequest& request, Gateway& gateway) {
  return gateway.send_chat(request);
}

}  // namespace threatforge::llm

#endif  // THREATFORGE_GATEWAY_HPP_
