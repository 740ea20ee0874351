// Copyright 2026 The Morita Tori Authors
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
#include <string_view>

namespace morita {

enum class ErrorCode {
    Singular,
    NotSkew,
    OddSize,
    BothZero,
    ShapeMismatch,
    RelationViolated,
    DeterminantNotOne,
    NotUnimodular,
    OddSupport,
    NotSpecialForm,
    OddRank,
    InternalMismatch,
    DualityFailed,
    NotIntegral,
    MembershipFailed,
    ActionMismatch,
    ClosedFormMismatch,
    CtildeNonzero,
    ReassemblyMismatch,
    Undefined,
    QuadratureUnconverged,
    ParseError,
};

std::string_view error_code_name(ErrorCode code);

/// Every recoverable failure in the library is reported through this type.
/// `witness()` optionally carries the offending matrix, already rendered as
/// exact rational strings.
class MoritaError : public std::runtime_error {
   public:
    MoritaError(ErrorCode code, const std::string &message, std::string witness = {});

    ErrorCode code() const noexcept {
        return code_;
    }
    const std::string &witness() const noexcept {
        return witness_;
    }

   private:
    ErrorCode code_;
    std::string witness_;
};

}  // namespace morita
