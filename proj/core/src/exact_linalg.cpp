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

#include "morita/exact_linalg.hpp"

#include <algorithm>
#include <numeric>

namespace morita {

std::size_t SnfResult::rank() const {
    std::size_t r = 0;
    std::size_t diag = std::min(D.rows(), D.cols());
    while (r < diag && D(r, r) != 0) {
        r++;
    }
    return r;
}

std::vector<Integer> SnfResult::invariant_factors() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < rank(); i++) {
        out.push_back(D(i, i));
    }
    return out;
}

IntMatrix alternating_block(const std::vector<Integer> &h, std::size_t size) {
    std::size_t k = h.size();
    if (2 * k > size) {
        throw MoritaError(ErrorCode::ShapeMismatch, "alternating block too small for h");
    }
    IntMatrix out(size, size);
    for (std::size_t j = 0; j < k; j++) {
        out(j, k + j) = h[j];
        out(k + j, j) = -h[j];
    }
    return out;
}

RatMatrix standard_symplectic(std::size_t p) {
    RatMatrix j0(2 * p, 2 * p);
    for (std::size_t i = 0; i < p; i++) {
        j0(i, p + i) = 1;
        j0(p + i, i) = -1;
    }
    return j0;
}

Integer determinant(const IntMatrix &m) {
    if (!m.is_square()) {
        throw MoritaError(ErrorCode::ShapeMismatch, "determinant of " + m.shape_string());
    }
    std::size_t n = m.rows();
    if (n == 0) {
        return 1;
    }
    // Fraction-free Bareiss elimination.
    IntMatrix a = m;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; k++) {
        if (a(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && a(swap, k) == 0) {
                swap++;
            }
            if (swap == n) {
                return 0;
            }
            a.swap_rows(k, swap);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; i++) {
            for (std::size_t j = k + 1; j < n; j++) {
                Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = v;
            }
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

namespace {

// Row-reduces `a` in place over Q (partial elimination, no scaling); returns
// the pivot columns among the first `pivot_cols`.
std::vector<std::size_t> row_reduce(RatMatrix &a, std::size_t pivot_cols, bool *swapped_odd = nullptr) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    bool odd = false;
    for (std::size_t c = 0; c < pivot_cols && r < a.rows(); c++) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0) {
            p++;
        }
        if (p == a.rows()) {
            continue;
        }
        if (p != r) {
            a.swap_rows(p, r);
            odd = !odd;
        }
        for (std::size_t i = r + 1; i < a.rows(); i++) {
            if (a(i, c) != 0) {
                Rational f = -a(i, c) / a(r, c);
                a.add_row_multiple(i, r, f);
            }
        }
        pivots.push_back(c);
        r++;
    }
    if (swapped_odd) {
        *swapped_odd = odd;
    }
    return pivots;
}

}  // namespace

Rational determinant(const RatMatrix &m) {
    if (!m.is_square()) {
        throw MoritaError(ErrorCode::ShapeMismatch, "determinant of " + m.shape_string());
    }
    RatMatrix a = m;
    bool odd = false;
    auto pivots = row_reduce(a, a.cols(), &odd);
    if (pivots.size() < a.rows()) {
        return 0;
    }
    Rational det = odd ? -1 : 1;
    for (std::size_t i = 0; i < a.rows(); i++) {
        det *= a(i, i);
    }
    return det;
}

std::size_t rank(const RatMatrix &m) {
    RatMatrix a = m;
    return row_reduce(a, a.cols()).size();
}

std::size_t rank(const IntMatrix &m) {
    return rank(to_rational(m));
}

bool is_unimodular(const IntMatrix &m) {
    if (!m.is_square()) {
        return false;
    }
    Integer d = determinant(m);
    return d == 1 || d == -1;
}

RatMatrix rational_inverse(const RatMatrix &m) {
    if (!m.is_square()) {
        throw MoritaError(ErrorCode::ShapeMismatch, "inverse of " + m.shape_string());
    }
    std::size_t n = m.rows();
    RatMatrix aug = hstack<Rational>({m, RatMatrix::identity(n)});
    for (std::size_t c = 0; c < n; c++) {
        std::size_t p = c;
        while (p < n && aug(p, c) == 0) {
            p++;
        }
        if (p == n) {
            throw MoritaError(ErrorCode::Singular, "matrix is singular", format_matrix(m));
        }
        aug.swap_rows(p, c);
        Rational inv = 1 / aug(c, c);
        for (std::size_t j = 0; j < aug.cols(); j++) {
            aug(c, j) *= inv;
        }
        for (std::size_t i = 0; i < n; i++) {
            if (i != c && aug(i, c) != 0) {
                Rational f = -aug(i, c);
                aug.add_row_multiple(i, c, f);
            }
        }
    }
    return aug.block(0, n, n, n);
}

IntMatrix unimodular_inverse(const IntMatrix &m) {
    if (!is_unimodular(m)) {
        throw MoritaError(ErrorCode::NotUnimodular, "matrix is not in GL(n, Z)", format_matrix(m));
    }
    auto inv = to_integer(rational_inverse(to_rational(m)));
    // |det| = 1 makes the adjugate formula integral.
    return *inv;
}

std::optional<RatMatrix> solve_full_column_rank(const RatMatrix &a, const RatMatrix &b,
                                                const std::vector<std::size_t> &row_order) {
    if (a.rows() != b.rows()) {
        throw MoritaError(ErrorCode::ShapeMismatch, "solve: row mismatch");
    }
    std::size_t n = a.cols();
    RatMatrix aug(a.rows(), n + b.cols());
    for (std::size_t i = 0; i < a.rows(); i++) {
        std::size_t src = row_order.empty() ? i : row_order.at(i);
        aug.set_block(i, 0, a.row(src));
        aug.set_block(i, n, b.row(src));
    }
    auto pivots = row_reduce(aug, n);
    if (pivots.size() != n) {
        return std::nullopt;
    }
    for (std::size_t i = n; i < aug.rows(); i++) {
        for (std::size_t j = n; j < aug.cols(); j++) {
            if (aug(i, j) != 0) {
                return std::nullopt;
            }
        }
    }
    // Back substitution on the upper-triangular leading n x n block.
    RatMatrix x(n, b.cols());
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = 0; j < b.cols(); j++) {
            Rational acc = aug(ii, n + j);
            for (std::size_t c = ii + 1; c < n; c++) {
                acc -= aug(ii, c) * x(c, j);
            }
            x(ii, j) = acc / aug(ii, ii);
        }
    }
    return x;
}

SnfResult smith_normal_form(const IntMatrix &m) {
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(m.rows());
    IntMatrix v = IntMatrix::identity(m.cols());
    std::size_t diag = std::min(m.rows(), m.cols());

    for (std::size_t t = 0; t < diag; t++) {
        bool exhausted = false;
        while (true) {
            std::size_t pi = 0, pj = 0;
            bool found = false;
            for (std::size_t i = t; i < a.rows(); i++) {
                for (std::size_t j = t; j < a.cols(); j++) {
                    if (a(i, j) != 0 && (!found || abs(a(i, j)) < abs(a(pi, pj)))) {
                        pi = i;
                        pj = j;
                        found = true;
                    }
                }
            }
            if (!found) {
                exhausted = true;
                break;
            }
            a.swap_rows(pi, t);
            u.swap_rows(pi, t);
            a.swap_cols(pj, t);
            v.swap_cols(pj, t);

            bool clean = true;
            for (std::size_t i = t + 1; i < a.rows(); i++) {
                if (a(i, t) == 0) {
                    continue;
                }
                Integer q = -floor_div(a(i, t), a(t, t));
                a.add_row_multiple(i, t, q);
                u.add_row_multiple(i, t, q);
                clean = clean && a(i, t) == 0;
            }
            for (std::size_t j = t + 1; j < a.cols(); j++) {
                if (a(t, j) == 0) {
                    continue;
                }
                Integer q = -floor_div(a(t, j), a(t, t));
                a.add_col_multiple(j, t, q);
                v.add_col_multiple(j, t, q);
                clean = clean && a(t, j) == 0;
            }
            if (!clean) {
                continue;
            }

            // Enforce d_t | every remaining entry.
            bool divides = true;
            for (std::size_t i = t + 1; i < a.rows() && divides; i++) {
                for (std::size_t j = t + 1; j < a.cols(); j++) {
                    if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                        a.add_row_multiple(t, i, 1);
                        u.add_row_multiple(t, i, 1);
                        divides = false;
                        break;
                    }
                }
            }
            if (divides) {
                break;
            }
        }
        if (exhausted) {
            break;
        }
        if (a(t, t) < 0) {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    return SnfResult{std::move(u), std::move(a), std::move(v)};
}

IntMatrix complete_basis(const IntMatrix &c, std::size_t n) {
    if (c.cols() != n) {
        throw MoritaError(ErrorCode::ShapeMismatch, "complete_basis: C must have n columns");
    }
    // C V = U^{-1} D, and D has its zero columns last.
    return smith_normal_form(c).V;
}

IntMatrix kernel_lattice_basis(const IntMatrix &c) {
    SnfResult snf = smith_normal_form(c);
    std::size_t r = snf.rank();
    return snf.V.block(0, r, c.cols(), c.cols() - r);
}

AlternatingForm alternating_normal_form_int(const IntMatrix &a_in) {
    if (!a_in.is_square()) {
        throw MoritaError(ErrorCode::ShapeMismatch, "alternating form must be square");
    }
    if (!a_in.is_skew()) {
        throw MoritaError(ErrorCode::NotSkew, "alternating form is not skew-symmetric", format_matrix(a_in));
    }
    std::size_t n = a_in.rows();
    if (n % 2 != 0) {
        throw MoritaError(ErrorCode::OddSize, "alternating normal form needs even size");
    }

    // Congruence A <- E^t A E; `inv` tracks the inverse of the accumulated E.
    IntMatrix a = a_in;
    IntMatrix inv = IntMatrix::identity(n);
    auto col_op = [&](std::size_t dst, std::size_t src, const Integer &f) {
        a.add_col_multiple(dst, src, f);
        a.add_row_multiple(dst, src, f);
        inv.add_row_multiple(src, dst, -f);
    };
    auto swap = [&](std::size_t i, std::size_t j) {
        a.swap_cols(i, j);
        a.swap_rows(i, j);
        inv.swap_rows(i, j);
    };

    std::vector<Integer> h;
    std::size_t s = 0;
    while (s + 1 < n) {
        std::size_t bi = 0, bj = 0;
        bool found = false;
        for (std::size_t i = s; i < n; i++) {
            for (std::size_t j = i + 1; j < n; j++) {
                if (a(i, j) != 0 && (!found || abs(a(i, j)) < abs(a(bi, bj)))) {
                    bi = i;
                    bj = j;
                    found = true;
                }
            }
        }
        if (!found) {
            break;
        }
        swap(s, bi);
        if (bj == s) {
            bj = bi;
        }
        swap(s + 1, bj);
        if (a(s, s + 1) < 0) {
            swap(s, s + 1);
        }
        const Integer d = a(s, s + 1);
        bool clean = true;
        for (std::size_t l = s + 2; l < n; l++) {
            col_op(l, s + 1, -floor_div(a(s, l), d));
            col_op(l, s, floor_div(a(s + 1, l), d));
            clean = clean && a(s, l) == 0 && a(s + 1, l) == 0;
        }
        if (clean) {
            h.push_back(d);
            s += 2;
        }
    }

    // Pairs (2j, 2j+1) -> positions (j, k+j).
    std::size_t k = h.size();
    std::vector<std::size_t> order;
    for (std::size_t j = 0; j < k; j++) {
        order.push_back(2 * j);
    }
    for (std::size_t j = 0; j < k; j++) {
        order.push_back(2 * j + 1);
    }
    for (std::size_t j = 2 * k; j < n; j++) {
        order.push_back(j);
    }
    IntMatrix r(n, n);
    for (std::size_t i = 0; i < n; i++) {
        r.set_block(i, 0, inv.row(order[i]));
    }

    if (r.transpose() * alternating_block(h, n) * r != a_in) {
        throw MoritaError(ErrorCode::InternalMismatch, "alternating normal form failed re-multiplication",
                          format_matrix(a_in));
    }
    return AlternatingForm{std::move(r), std::move(h)};
}

RatMatrix symplectic_factor_rational(const RatMatrix &a) {
    if (!a.is_square()) {
        throw MoritaError(ErrorCode::ShapeMismatch, "symplectic factor needs a square matrix");
    }
    if (!a.is_skew()) {
        throw MoritaError(ErrorCode::NotSkew, "symplectic factor needs a skew matrix", format_matrix(a));
    }
    std::size_t n = a.rows();
    if (n % 2 != 0) {
        throw MoritaError(ErrorCode::Singular, "odd-size skew matrix is singular", format_matrix(a));
    }
    std::size_t p = n / 2;

    using Vec = std::vector<Rational>;
    auto form = [&](const Vec &x, const Vec &y) {
        Rational acc = 0;
        for (std::size_t i = 0; i < n; i++) {
            if (x[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < n; j++) {
                if (y[j] != 0) {
                    acc += x[i] * a(i, j) * y[j];
                }
            }
        }
        return acc;
    };
    auto is_zero = [](const Vec &v) {
        return std::all_of(v.begin(), v.end(), [](const Rational &x) { return x == 0; });
    };

    std::vector<Vec> pool;
    for (std::size_t i = 0; i < n; i++) {
        Vec e(n);
        e[i] = 1;
        pool.push_back(std::move(e));
    }
    std::vector<Vec> es, fs;
    while (true) {
        std::erase_if(pool, is_zero);
        if (pool.empty()) {
            break;
        }
        Vec u = pool.front();
        pool.erase(pool.begin());
        auto partner = std::find_if(pool.begin(), pool.end(), [&](const Vec &w) { return form(u, w) != 0; });
        if (partner == pool.end()) {
            throw MoritaError(ErrorCode::Singular, "skew matrix is degenerate", format_matrix(a));
        }
        Vec f = *partner;
        pool.erase(partner);
        Rational pairing = form(u, f);
        Vec e = u;
        for (auto &x : e) {
            x /= pairing;
        }
        for (auto &w : pool) {
            Rational alpha = form(f, w);
            Rational beta = form(e, w);
            for (std::size_t i = 0; i < n; i++) {
                w[i] += alpha * e[i] - beta * f[i];
            }
        }
        es.push_back(std::move(e));
        fs.push_back(std::move(f));
    }
    if (es.size() != p) {
        throw MoritaError(ErrorCode::Singular, "skew matrix is degenerate", format_matrix(a));
    }
    RatMatrix basis(n, n);
    for (std::size_t j = 0; j < p; j++) {
        for (std::size_t i = 0; i < n; i++) {
            basis(i, j) = es[j][i];
            basis(i, p + j) = fs[j][i];
        }
    }
    RatMatrix t11 = rational_inverse(basis);
    if (t11.transpose() * standard_symplectic(p) * t11 != a) {
        throw MoritaError(ErrorCode::InternalMismatch, "symplectic factor failed re-multiplication",
                          format_matrix(a));
    }
    return t11;
}

ExtGcd ext_gcd(const Integer &a, const Integer &b) {
    if (a == 0 && b == 0) {
        throw MoritaError(ErrorCode::BothZero, "gcd(0, 0) is undefined");
    }
    if (b == 0) {
        return ExtGcd{abs(a), a > 0 ? Integer(1) : Integer(-1), 0};
    }
    Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Integer modulus = abs(b) / g;
    Integer c = mod_floor(s, modulus);
    Integer d = (g - c * a) / b;
    return ExtGcd{g, c, d};
}

}  // namespace morita
