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

#include "morita/rational.hpp"

#include <cctype>
#include <climits>

#include "morita/errors.hpp"

namespace morita {

namespace {

bool is_decimal_integer(std::string_view text) {
    std::size_t i = 0;
    if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
        i = 1;
    }
    if (i == text.size()) {
        return false;
    }
    for (; i < text.size(); i++) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            return false;
        }
    }
    return true;
}

std::string strip_plus(std::string_view text) {
    if (!text.empty() && text[0] == '+') {
        text.remove_prefix(1);
    }
    return std::string(text);
}

}  // namespace

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::Singular: return "Singular";
        case ErrorCode::NotSkew: return "NotSkew";
        case ErrorCode::OddSize: return "OddSize";
        case ErrorCode::BothZero: return "BothZero";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::RelationViolated: return "RelationViolated";
        case ErrorCode::DeterminantNotOne: return "DeterminantNotOne";
        case ErrorCode::NotUnimodular: return "NotUnimodular";
        case ErrorCode::OddSupport: return "OddSupport";
        case ErrorCode::NotSpecialForm: return "NotSpecialForm";
        case ErrorCode::OddRank: return "OddRank";
        case ErrorCode::InternalMismatch: return "InternalMismatch";
        case ErrorCode::DualityFailed: return "DualityFailed";
        case ErrorCode::NotIntegral: return "NotIntegral";
        case ErrorCode::MembershipFailed: return "MembershipFailed";
        case ErrorCode::ActionMismatch: return "ActionMismatch";
        case ErrorCode::ClosedFormMismatch: return "ClosedFormMismatch";
        case ErrorCode::CtildeNonzero: return "CtildeNonzero";
        case ErrorCode::ReassemblyMismatch: return "ReassemblyMismatch";
        case ErrorCode::Undefined: return "Undefined";
        case ErrorCode::QuadratureUnconverged: return "QuadratureUnconverged";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

MoritaError::MoritaError(ErrorCode code, const std::string &message, std::string witness)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code),
      witness_(std::move(witness)) {
}

Integer parse_integer(std::string_view text) {
    if (!is_decimal_integer(text)) {
        throw MoritaError(ErrorCode::ParseError, "not an integer: '" + std::string(text) + "'");
    }
    return Integer(strip_plus(text), 10);
}

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text));
    }
    auto num_text = text.substr(0, slash);
    auto den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
        throw MoritaError(ErrorCode::ParseError, "signed denominator: '" + std::string(text) + "'");
    }
    Integer num = parse_integer(num_text);
    Integer den = parse_integer(den_text);
    if (den == 0) {
        throw MoritaError(ErrorCode::ParseError, "zero denominator: '" + std::string(text) + "'");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational &value) {
    return value.get_str(10);
}

std::string to_string(const Integer &value) {
    return value.get_str(10);
}

std::optional<std::int64_t> to_int64(const Integer &value) {
    if (!value.fits_slong_p()) {
        return std::nullopt;
    }
    static_assert(sizeof(long) == sizeof(std::int64_t));
    return static_cast<std::int64_t>(value.get_si());
}

Integer floor_div(const Integer &a, const Integer &b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer mod_floor(const Integer &a, const Integer &b) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r < 0) {
        r += abs(b);
    }
    return r;
}

Rational frac(const Rational &value) {
    Integer num = value.get_num();
    const Integer &den = value.get_den();
    Integer r = mod_floor(num, den);
    Rational out(r, den);
    out.canonicalize();
    return out;
}

}  // namespace morita
