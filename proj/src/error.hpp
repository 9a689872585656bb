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

#ifndef THREATFORGE_ERROR_HPP_
#define THREATFORGE_ERROR_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace threatforge {

// Every failure the core can raise. The names double as the stable
// error-kind strings reported through the C API.
enum class Errc {
  kSyntaxError,
  kUnknownReference,
  kDuplicateId,
  kUnknownAttribute,
  kInvalidGraph,
  kUnknownKind,
  kNotACode,
  kExemplarArity,
  kEmptyQuestion,
  kBackendFailure,
  kScriptExhausted,
  kMissingApiKey,
  kScriptSyntax,
  kModeMismatch,
  kEmptyText,
  kEndpointFailure,
  kEmptyInput,
  kSchemaError,
  kTooFew,
  kIoError,
  kMissingDims,
  kShapeMismatch,
  kInvalidArgument,
  kUsage,
  kInternal,
};

// Coarse classes; their numeric values are the CLI exit codes.
enum class ErrorClass { kUsage = 2, kBackend = 3, kSchema = 4, kInternal = 5 };

std::string_view errc_name(Errc code);
ErrorClass error_class(Errc code);

struct SourceLoc {
  int line = 0;
  int col = 0;
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message,
        std::optional<SourceLoc> loc = std::nullopt);

  Errc code() const noexcept { return code_; }
  const std::optional<SourceLoc>& loc() const noexcept { return loc_; }

 private:
  Errc code_;
  std::optional<SourceLoc> loc_;
};

}  // namespace threatforge

#endif  // THREATFORGE_ERROR_HPP_
