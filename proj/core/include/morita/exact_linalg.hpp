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

#include <cstddef>
#include <optional>
#include <vector>

#include "morita/matrix.hpp"

namespace morita {

/// U * M * V == D with U, V unimodular, D diagonal, d1 | d2 | ... | dr,
/// all d_i >= 0 and zeros trailing.
struct SnfResult {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;

    /// Number of nonzero invariant factors.
    std::size_t rank() const;
    std::vector<Integer> invariant_factors() const;
};

/// Output of the integer alternating normal form
///   A == R^t * [[0, P, 0], [-P, 0, 0], [0, 0, 0]] * R,  P = diag(h).
struct AlternatingForm {
    IntMatrix R;
    std::vector<Integer> h;

    std::size_t k() const {
        return h.size();
    }
};

/// The standard block [[0, P, 0], [-P, 0, 0], [0, 0, 0]] of size `size`.
IntMatrix alternating_block(const std::vector<Integer> &h, std::size_t size);

/// J0 = [[0, I_p], [-I_p, 0]].
RatMatrix standard_symplectic(std::size_t p);

struct ExtGcd {
    Integer g;
    Integer c;
    Integer d;
};

// Determinants and ranks are exact (fraction-free Bareiss on integers,
// Gauss-Jordan on rationals).
Integer determinant(const IntMatrix &m);
Rational determinant(const RatMatrix &m);
std::size_t rank(const RatMatrix &m);
std::size_t rank(const IntMatrix &m);
bool is_unimodular(const IntMatrix &m);

/// Exact inverse. Throws MoritaError(Singular) for a singular matrix and
/// ShapeMismatch for a non-square one.
RatMatrix rational_inverse(const RatMatrix &m);

/// Inverse of a unimodular integer matrix. Throws NotUnimodular.
IntMatrix unimodular_inverse(const IntMatrix &m);

/// Solves A * X == B exactly. The row order in which pivots are searched
/// can be overridden (used to cross-check uniqueness). Returns nullopt when
/// the system is inconsistent or A lacks full column rank.
std::optional<RatMatrix> solve_full_column_rank(const RatMatrix &a, const RatMatrix &b,
                                                const std::vector<std::size_t> &row_order = {});

/// Deterministic Smith normal form. Pivot: smallest nonzero |entry| of the
/// active submatrix, ties broken by row-major position.
SnfResult smith_normal_form(const IntMatrix &m);

/// Columns form a saturated basis of {x in Z^n : C x = 0}.
IntMatrix kernel_lattice_basis(const IntMatrix &c);

/// R0 in GL(n, Z) whose trailing n - rank(C) columns span ker C over Z.
IntMatrix complete_basis(const IntMatrix &c, std::size_t n);

/// Integer alternating normal form, verified by re-multiplication before
/// returning. h_j are made positive; no divisibility chain is imposed.
/// Throws NotSkew, OddSize.
AlternatingForm alternating_normal_form_int(const IntMatrix &a);

/// T11 with T11^t * J0 * T11 == A for a rational skew invertible A of even
/// size, via symplectic Gram-Schmidt. Verified before returning.
/// Throws NotSkew, OddSize, Singular.
RatMatrix symplectic_factor_rational(const RatMatrix &a);

/// c*a + d*b == g == gcd(a, b) with 0 <= c < |b|/g when b != 0.
/// Throws BothZero.
ExtGcd ext_gcd(const Integer &a, const Integer &b);

}  // namespace morita
