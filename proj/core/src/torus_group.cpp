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

#include "morita/torus_group.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "morita/exact_linalg.hpp"

namespace morita {

Theta::Theta(RatMatrix m) : m_(std::move(m)) {
    if (!m_.is_square() || m_.rows() < 2) {
        throw MoritaError(ErrorCode::ShapeMismatch, "theta must be n x n with n >= 2, got " + m_.shape_string());
    }
    if (!m_.is_skew()) {
        throw MoritaError(ErrorCode::NotSkew, "theta is not skew-symmetric", format_matrix(m_));
    }
}

GroupElement::GroupElement(IntMatrix a, IntMatrix b, IntMatrix c, IntMatrix d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
}

IntMatrix GroupElement::assembled() const {
    return assemble(a_, b_, c_, d_);
}

GroupElement GroupElement::identity(std::size_t n) {
    return GroupElement(IntMatrix::identity(n), IntMatrix(n, n), IntMatrix(n, n), IntMatrix::identity(n));
}

GroupElement check_membership(IntMatrix a, IntMatrix b, IntMatrix c, IntMatrix d) {
    std::size_t n = a.rows();
    for (const IntMatrix *m : {&a, &b, &c, &d}) {
        if (m->rows() != n || m->cols() != n) {
            throw MoritaError(ErrorCode::ShapeMismatch, "group element blocks must all be n x n");
        }
    }
    IntMatrix at = a.transpose();
    IntMatrix ct = c.transpose();
    IntMatrix r1 = at * c + ct * a;
    if (!r1.is_zero()) {
        throw MoritaError(ErrorCode::RelationViolated, "A^tC + C^tA != 0", format_matrix(r1));
    }
    IntMatrix bt = b.transpose();
    IntMatrix r2 = bt * d + d.transpose() * b;
    if (!r2.is_zero()) {
        throw MoritaError(ErrorCode::RelationViolated, "B^tD + D^tB != 0", format_matrix(r2));
    }
    IntMatrix r3 = at * d + ct * b;
    if (r3 != IntMatrix::identity(n)) {
        throw MoritaError(ErrorCode::RelationViolated, "A^tD + C^tB != I", format_matrix(r3));
    }
    IntMatrix dct = d * ct;
    if (!dct.is_skew()) {
        throw MoritaError(ErrorCode::RelationViolated, "DC^t is not skew", format_matrix(dct));
    }
    Integer det = determinant(assemble(a, b, c, d));
    if (det != 1) {
        throw MoritaError(ErrorCode::DeterminantNotOne, "det g = " + to_string(det));
    }
    return GroupElement(std::move(a), std::move(b), std::move(c), std::move(d));
}

GroupElement invert_element(const GroupElement &g) {
    return check_membership(g.D().transpose(), g.B().transpose(), g.C().transpose(), g.A().transpose());
}

GroupElement compose(const GroupElement &g, const GroupElement &h) {
    if (g.n() != h.n()) {
        throw MoritaError(ErrorCode::ShapeMismatch, "compose: dimension mismatch");
    }
    return check_membership(g.A() * h.A() + g.B() * h.C(), g.A() * h.B() + g.B() * h.D(),
                            g.C() * h.A() + g.D() * h.C(), g.C() * h.B() + g.D() * h.D());
}

GroupElement rho(const IntMatrix &r) {
    IntMatrix inv = unimodular_inverse(r);
    std::size_t n = r.rows();
    return check_membership(r, IntMatrix(n, n), IntMatrix(n, n), inv.transpose());
}

GroupElement mu(const IntMatrix &n_mat) {
    if (!n_mat.is_skew()) {
        throw MoritaError(ErrorCode::NotSkew, "mu(N) needs integer skew N", format_matrix(n_mat));
    }
    std::size_t n = n_mat.rows();
    return check_membership(IntMatrix::identity(n), n_mat, IntMatrix(n, n), IntMatrix::identity(n));
}

GroupElement sigma_flip(std::size_t n, const std::vector<std::size_t> &support) {
    if (support.size() % 2 != 0) {
        throw MoritaError(ErrorCode::OddSupport, "sigma_flip support must have even size");
    }
    IntMatrix ad = IntMatrix::identity(n);
    IntMatrix bc(n, n);
    for (std::size_t j : support) {
        if (j >= n) {
            throw MoritaError(ErrorCode::ShapeMismatch, "sigma_flip index out of range");
        }
        if (bc(j, j) != 0) {
            throw MoritaError(ErrorCode::OddSupport, "sigma_flip support has repeated index");
        }
        ad(j, j) = 0;
        bc(j, j) = 1;
    }
    return check_membership(ad, bc, bc, ad);
}

std::optional<Theta> act(const GroupElement &g, const Theta &theta) {
    if (g.n() != theta.n()) {
        throw MoritaError(ErrorCode::ShapeMismatch, "act: dimension mismatch");
    }
    const RatMatrix &t = theta.matrix();
    RatMatrix c = to_rational(g.C());
    RatMatrix denom = c * t + to_rational(g.D());
    if (determinant(denom) == 0) {
        return std::nullopt;
    }
    RatMatrix inv = rational_inverse(denom);
    RatMatrix skew_check = inv * c;
    if (!skew_check.is_skew()) {
        throw MoritaError(ErrorCode::InternalMismatch, "(C theta + D)^{-1} C is not skew", format_matrix(skew_check));
    }
    RatMatrix result = (to_rational(g.A()) * t + to_rational(g.B())) * inv;
    if (!result.is_skew()) {
        throw MoritaError(ErrorCode::InternalMismatch, "g theta is not skew", format_matrix(result));
    }
    return Theta(std::move(result));
}

std::int64_t uniform_int(std::mt19937_64 &rng, std::int64_t lo, std::int64_t hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) {
        return static_cast<std::int64_t>(rng());
    }
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
}

IntMatrix random_unimodular(std::mt19937_64 &rng, std::size_t n, std::size_t steps) {
    IntMatrix r = IntMatrix::identity(n);
    if (n < 2) {
        return r;
    }
    auto last = static_cast<std::int64_t>(n - 1);
    for (std::size_t s = 0; s < steps; s++) {
        auto i = static_cast<std::size_t>(uniform_int(rng, 0, last));
        auto j = static_cast<std::size_t>(uniform_int(rng, 0, last - 1));
        if (j >= i) {
            j++;
        }
        switch (uniform_int(rng, 0, 2)) {
            case 0:
                r.add_col_multiple(j, i, Integer(uniform_int(rng, -2, 2)));
                break;
            case 1:
                r.swap_cols(i, j);
                break;
            default:
                r.negate_col(i);
                break;
        }
    }
    return r;
}

namespace {

GroupElement random_generator(std::mt19937_64 &rng, std::size_t n) {
    switch (uniform_int(rng, 0, 2)) {
        case 0:
            return rho(random_unimodular(rng, n));
        case 1: {
            IntMatrix skew(n, n);
            for (std::size_t i = 0; i < n; i++) {
                for (std::size_t j = i + 1; j < n; j++) {
                    Integer v = uniform_int(rng, -3, 3);
                    skew(i, j) = v;
                    skew(j, i) = -v;
                }
            }
            return mu(skew);
        }
        default: {
            std::vector<std::size_t> idx(n);
            std::iota(idx.begin(), idx.end(), 0);
            for (std::size_t i = n; i > 1; i--) {
                auto j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(i - 1)));
                std::swap(idx[i - 1], idx[j]);
            }
            auto size = 2 * static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(n / 2)));
            idx.resize(size);
            std::sort(idx.begin(), idx.end());
            return sigma_flip(n, idx);
        }
    }
}

}  // namespace

GroupElement random_element(std::mt19937_64 &rng, std::size_t word_length, std::size_t n) {
    GroupElement g = GroupElement::identity(n);
    for (std::size_t i = 0; i < word_length; i++) {
        g = compose(g, random_generator(rng, n));
    }
    return g;
}

GroupElement random_element(std::uint64_t seed, std::size_t word_length, std::size_t n) {
    std::mt19937_64 rng(seed);
    return random_element(rng, word_length, n);
}

Theta random_theta(std::mt19937_64 &rng, std::size_t n, std::int64_t max_den) {
    RatMatrix t(n, n);
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = i + 1; j < n; j++) {
            Rational v(Integer(uniform_int(rng, -max_den, max_den)), Integer(uniform_int(rng, 1, max_den)));
            v.canonicalize();
            t(i, j) = v;
            t(j, i) = -v;
        }
    }
    return Theta(std::move(t));
}

}  // namespace morita
