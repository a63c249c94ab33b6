// Copyright 2026 The Authors.
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

#include "dsm/error.hpp"

namespace dsm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidParameter:
      return "invalid-parameter";
    case ErrorKind::kAssumptionViolated:
      return "assumption-violated";
    case ErrorKind::kTopologyGenerationFailure:
      return "topology-generation-failure";
    case ErrorKind::kPreconditionViolation:
      return "precondition-violation";
    case ErrorKind::kParseError:
      return "parse-error";
    case ErrorKind::kDataInsufficient:
      return "data-insufficient";
    case ErrorKind::kAuditFailure:
      return "audit-failure";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace dsm
