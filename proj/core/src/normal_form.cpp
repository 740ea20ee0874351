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

#include "morita/normal_form.hpp"

#include <numeric>

#include "morita/exact_linalg.hpp"

namespace morita {

IntMatrix SpecialForm::C() const {
    IntMatrix c(n, n);
    c.set_block(0, 0, C11);
    c.set_block(2 * p, 0, C21);
    return c;
}

RatMatrix SpecialForm::D() const {
    RatMatrix d(n, n);
    RatMatrix lead = vstack<Rational>({to_rational(C11), to_rational(C21)});
    d.set_block(0, 0, -(lead * Z));
    d.set_block(0, 2 * p, to_rational(D12));
    d.set_block(2 * p, 2 * p, to_rational(D22));
    return d;
}

namespace {

std::size_t trailing_zero_columns(const IntMatrix &c) {
    std::size_t count = 0;
    for (std::size_t j = c.cols(); j-- > 0;) {
        if (!c.column(j).is_zero()) {
            break;
        }
        count++;
    }
    return count;
}

std::optional<RatMatrix> solve_z(const GroupElement &g, std::size_t width, const std::vector<std::size_t> &order) {
    RatMatrix lead = to_rational(g.C().block(0, 0, g.n(), width));
    RatMatrix rhs = -to_rational(g.D().block(0, 0, g.n(), width));
    return solve_full_column_rank(lead, rhs, order);
}

}  // namespace

SpecialForm detect_special_form(const GroupElement &g) {
    std::size_t n = g.n();
    const IntMatrix &c = g.C();
    std::size_t width = n - trailing_zero_columns(c);
    std::size_t r = rank(c);
    if (r % 2 != 0) {
        throw MoritaError(ErrorCode::OddRank, "rank(C) = " + std::to_string(r) + " is odd", format_matrix(c));
    }
    if (r != width) {
        throw MoritaError(ErrorCode::NotSpecialForm,
                          "leading " + std::to_string(width) + " columns of C have rank " + std::to_string(r),
                          format_matrix(c));
    }
    std::size_t p = width / 2;
    auto z = solve_z(g, width, {});
    if (!z) {
        throw MoritaError(ErrorCode::NotSpecialForm, "leading columns of D are not -C Z", format_matrix(g.D()));
    }
    if (!z->is_skew()) {
        throw MoritaError(ErrorCode::NotSpecialForm, "Z is not skew-symmetric", format_matrix(*z));
    }
    SpecialForm sf;
    sf.n = n;
    sf.p = p;
    sf.Z = std::move(*z);
    std::size_t q = n - width;
    sf.C11 = c.block(0, 0, width, width);
    sf.C21 = c.block(width, 0, q, width);
    sf.D12 = g.D().block(0, width, width, q);
    sf.D22 = g.D().block(width, width, q, q);

    IntMatrix mixed = assemble(sf.C11, sf.D12, sf.C21, sf.D22);
    if (determinant(mixed) == 0) {
        throw MoritaError(ErrorCode::NotSpecialForm, "[[C11, D12], [C21, D22]] is singular", format_matrix(mixed));
    }
    return sf;
}

RatMatrix resolve_z_reversed(const GroupElement &g, std::size_t p) {
    std::vector<std::size_t> order(g.n());
    std::iota(order.rbegin(), order.rend(), 0);
    auto z = solve_z(g, 2 * p, order);
    if (!z) {
        throw MoritaError(ErrorCode::NotSpecialForm, "reverse-order solve for Z failed");
    }
    return *z;
}

IntMatrix normalize_right(const GroupElement &g) {
    IntMatrix r0 = complete_basis(g.C(), g.n());
    IntMatrix moved = g.C() * r0;
    std::size_t r = rank(g.C());
    if (r % 2 != 0) {
        throw MoritaError(ErrorCode::OddRank, "rank(C) = " + std::to_string(r) + " is odd", format_matrix(g.C()));
    }
    if (trailing_zero_columns(moved) != g.n() - r) {
        throw MoritaError(ErrorCode::InternalMismatch, "basis completion did not isolate ker C", format_matrix(moved));
    }
    return r0;
}

DomainCheck domain_check(const SpecialForm &sf, const Theta &theta) {
    if (theta.n() != sf.n) {
        throw MoritaError(ErrorCode::ShapeMismatch, "domain_check: dimension mismatch");
    }
    std::size_t w = 2 * sf.p;
    DomainCheck out;
    RatMatrix diff = theta.matrix().block(0, 0, w, w) - sf.Z;
    if (determinant(diff) == 0) {
        return out;
    }
    out.defined = true;
    out.F11 = rational_inverse(diff);
    if (!out.F11.is_skew()) {
        throw MoritaError(ErrorCode::InternalMismatch, "F11 is not skew", format_matrix(out.F11));
    }
    RatMatrix c = to_rational(sf.C());
    RatMatrix lhs = rational_inverse(c * theta.matrix() + sf.D()) * c;
    RatMatrix rhs(sf.n, sf.n);
    rhs.set_block(0, 0, out.F11);
    if (lhs != rhs) {
        throw MoritaError(ErrorCode::InternalMismatch, "(C theta + D)^{-1} C != [[F11, 0], [0, 0]]",
                          format_matrix(lhs));
    }
    return out;
}

}  // namespace morita
