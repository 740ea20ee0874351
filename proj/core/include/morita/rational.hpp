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

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace morita {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "p/q" or "-p/q" into a canonical rational. Throws
/// MoritaError(ParseError) on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Parses a decimal integer string. Throws MoritaError(ParseError).
Integer parse_integer(std::string_view text);

/// Canonical "p/q" text ("p" when the denominator is 1).
std::string to_string(const Rational &value);
std::string to_string(const Integer &value);

std::optional<std::int64_t> to_int64(const Integer &value);

/// Fractional part in [0, 1), exact.
Rational frac(const Rational &value);

/// Floor division and non-negative remainder for b != 0.
Integer floor_div(const Integer &a, const Integer &b);
Integer mod_floor(const Integer &a, const Integer &b);

}  // namespace morita
