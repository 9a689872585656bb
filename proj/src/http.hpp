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

// Minimal blocking JSON-over-HTTP client shared by the chat gateway and the
// embedding similarity provider.

#ifndef THREATFORGE_HTTP_HPP_
#define THREATFORGE_HTTP_HPP_

#include <chrono>
#include <string>
#include <utility>
#include <vector>

namespace threatforge::http {

struct Response {
  int status = 0;  // 0 when no HTTP response was received
  std::string body;
  std::string error;  // transport failure description
};

// POSTs `body` to base_url + path. `base_url` is scheme://host[:port][/prefix].
Response post_json(const std::string& base_url, const std::string& path,
                   const std::string& body,
                   const std::vector<std::pair<std::string, std::string>>& headers,
                   std::chrono::seconds timeout = std::chrono::seconds(120));

}  // namespace threatforge::http

#endif  // THREATFORGE_HTTP_HPP_
