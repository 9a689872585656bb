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

#include "error.hpp"

namespace threatforge {
namespace {

std::string with_loc(const std::string& message,
                     const std::optional<SourceLoc>& loc) {
  if (!loc) return message;
  return std::to_string(loc->line) + ":" + std::to_string(loc->col) + ": " +
         message;
}

}  // namespace

Error::Error(Errc code, const std::string& message,
             std::optional<SourceLoc> loc)
    : std::runtime_error(with_loc(message, loc)), code_(code), loc_(loc) {}

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kSyntaxError: return "SyntaxError";
    case Errc::kUnknownReference: return "UnknownReference";
    case Errc::kDuplicateId: return "DuplicateId";
    case Errc::kUnknownAttribute: return "UnknownAttribute";
    case Errc::kInvalidGraph: return "InvalidGraph";
    case Errc::kUnknownKind: return "UnknownKind";
    case Errc::kNotACode: return "NotACode";
    case Errc::kExemplarArity: return "ExemplarArity";
    case Errc::kEmptyQuestion: return "EmptyQuestion";
    case Errc::kBackendFailure: return "BackendFailure";
    case Errc::kScriptExhausted: return "ScriptExhausted";
    case Errc::kMissingApiKey: return "MissingApiKey";
    case Errc::kScriptSyntax: return "ScriptSyntax";
    case Errc::kModeMismatch: return "ModeMismatch";
    case Errc::kEmptyText: return "EmptyText";
    case Errc::kEndpointFailure: return "EndpointFailure";
    case Errc::kEmptyInput: return "EmptyInput";
    case Errc::kSchemaError: return "SchemaError";
    case Errc::kTooFew: return "TooFew";
    case Errc::kIoError: return "IoError";
    case Errc::kMissingDims: return "MissingDims";
    case Errc::kShapeMismatch: return "ShapeMismatch";
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kUsage: return "UsageError";
    case Errc::kInternal: return "Internal";
  }
  return "Internal";
}

ErrorClass error_class(Errc code) {
  switch (code) {
    case Errc::kBackendFailure:
    case Errc::kScriptExhausted:
    case Errc::kMissingApiKey:
    case Errc::kEndpointFailure:
      return ErrorClass::kBackend;
    case Errc::kUsage:
    case Errc::kExemplarArity:
    case Errc::kEmptyQuestion:
    case Errc::kInvalidArgument:
    case Errc::kUnknownKind:
      return ErrorClass::kUsage;
    case Errc::kInternal:
    case Errc::kModeMismatch:
    case Errc::kShapeMismatch:
    case Errc::kMissingDims:
      return ErrorClass::kInternal;
    default:
      return ErrorClass::kSchema;
  }
}

}  // namespace threatforge
