// Copyright 2026 The iccg Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace iccg {

enum class ErrorCode {
  kDimension,
  kInfeasible,
  kInfeasibleRecourse,
  kUnboundedRecourse,
  kNumericalFailure,
  kCapExceeded,
  kParam,
  kDomain,
  kMasterInfeasible,
  kOracleFailure,
  kSpec,
  kEmptyInput,
  kParse,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimension: return "DimensionError";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kInfeasibleRecourse: return "InfeasibleRecourse";
    case ErrorCode::kUnboundedRecourse: return "UnboundedRecourse";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kParam: return "ParamError";
    case ErrorCode::kDomain: return "DomainError";
    case ErrorCode::kMasterInfeasible: return "MasterInfeasible";
    case ErrorCode::kOracleFailure: return "OracleFailure";
    case ErrorCode::kSpec: return "SpecError";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kParse: return "ParseError";
  }
  return "Error";
}

/// Single exception type for the library; `code()` tells callers what failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace iccg
