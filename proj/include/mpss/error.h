// Copyright 2026 The MPSS Authors
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

#ifndef MPSS_ERROR_H_
#define MPSS_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mpss {

enum class ErrorCode {
  kInvalidProgram,
  kShapeMismatch,
  kIterationLimit,
  kDegenerateDmu,
  kAlphaOutOfRange,
  kEpsilonNotUnitFraction,
  kUnclassifiable,
  kInvalidDataset,
  kNonpositiveInput,
  kSchemaMismatch,
  kAggregateMismatch,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure surfaced by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidProgram: return "InvalidProgram";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kIterationLimit: return "IterationLimit";
    case ErrorCode::kDegenerateDmu: return "DegenerateDmu";
    case ErrorCode::kAlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::kEpsilonNotUnitFraction: return "EpsilonNotUnitFraction";
    case ErrorCode::kUnclassifiable: return "Unclassifiable";
    case ErrorCode::kInvalidDataset: return "InvalidDataset";
    case ErrorCode::kNonpositiveInput: return "NonpositiveInput";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kAggregateMismatch: return "AggregateMismatch";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

struct Violation {
  std::size_t row = 0;  // 1-based data row
  std::string column;
  std::string reason;
};

// Dataset validation failure carrying every offending cell, not just the
// first. code() is the code of the first violation.
class DatasetError : public Error {
 public:
  DatasetError(ErrorCode code, std::vector<Violation> violations)
      : Error(code, Describe(violations)), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string Describe(const std::vector<Violation>& violations) {
    std::string out;
    for (const Violation& v : violations) {
      if (!out.empty()) out += "; ";
      out += "row " + std::to_string(v.row) + ", column '" + v.column +
             "': " + v.reason;
    }
    return out;
  }

  std::vector<Violation> violations_;
};

}  // namespace mpss

#endif  // MPSS_ERROR_H_
