// Copyright 2026 The Effortnet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace effortnet {

enum class ErrorCode {
  NonTopologicalNumbering,
  MultipleParents,
  Cycle,
  DisconnectedHierarchy,
  BudgetViolated,
  NonPositiveGamma,
  NotDescendant,
  NoConvergence,
  DomainError,
  TooLarge,
  IterationLimit,
  LpNumericalFailure,
  ParseError,
  ValidationError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonTopologicalNumbering: return "NonTopologicalNumbering";
    case ErrorCode::MultipleParents: return "MultipleParents";
    case ErrorCode::Cycle: return "Cycle";
    case ErrorCode::DisconnectedHierarchy: return "DisconnectedHierarchy";
    case ErrorCode::BudgetViolated: return "BudgetViolated";
    case ErrorCode::NonPositiveGamma: return "NonPositiveGamma";
    case ErrorCode::NotDescendant: return "NotDescendant";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::LpNumericalFailure: return "LpNumericalFailure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "UnknownError";
}

/// Exception carrying a machine-checkable error code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace effortnet
