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

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "morita/matrix.hpp"
#include "morita/torus_group.hpp"

namespace morita::testing {

inline Rational q(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
    IntMatrix m(rows.size(), rows.size() ? rows.begin()->size() : 0);
    std::size_t r = 0;
    for (const auto &row : rows) {
        std::size_t c = 0;
        for (long v : row) {
            m(r, c++) = v;
        }
        r++;
    }
    return m;
}

// Leibniz expansion over all permutations; independent of any elimination.
template <typename T>
T leibniz_det(const Matrix<T> &m) {
    std::size_t n = m.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    T total = 0;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; i++) {
            for (std::size_t j = i + 1; j < n; j++) {
                inversions += perm[i] > perm[j];
            }
        }
        T term = inversions % 2 ? -1 : 1;
        for (std::size_t i = 0; i < n && term != 0; i++) {
            term *= m(i, perm[i]);
        }
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; i++) {
            if (mask[i]) {
                s.push_back(i);
            }
        }
        out.push_back(s);
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return out;
}

// gcd of all k x k minors (the k-th determinantal divisor).
inline Integer determinantal_divisor(const IntMatrix &m, std::size_t k) {
    Integer g = 0;
    for (const auto &rows : subsets(m.rows(), k)) {
        for (const auto &cols : subsets(m.cols(), k)) {
            IntMatrix minor(k, k);
            for (std::size_t i = 0; i < k; i++) {
                for (std::size_t j = 0; j < k; j++) {
                    minor(i, j) = m(rows[i], cols[j]);
                }
            }
            Integer d = leibniz_det(minor);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
        }
    }
    return g;
}

// Invariant factors d_k = D_k / D_{k-1} from determinantal divisors.
inline std::vector<Integer> brute_invariant_factors(const IntMatrix &m) {
    std::vector<Integer> out;
    Integer prev = 1;
    for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); k++) {
        Integer dk = determinantal_divisor(m, k);
        if (dk == 0) {
            break;
        }
        out.push_back(dk / prev);
        prev = dk;
    }
    return out;
}

inline std::size_t brute_rank(const IntMatrix &m) {
    std::size_t r = 0;
    for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); k++) {
        if (determinantal_divisor(m, k) != 0) {
            r = k;
        }
    }
    return r;
}

// Adjugate inverse via cofactors.
inline RatMatrix adjugate_inverse(const RatMatrix &m) {
    std::size_t n = m.rows();
    Rational det = leibniz_det(m);
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = 0; j < n; j++) {
            RatMatrix minor(n - 1, n - 1);
            for (std::size_t r = 0, rr = 0; r < n; r++) {
                if (r == i) {
                    continue;
                }
                for (std::size_t c = 0, cc = 0; c < n; c++) {
                    if (c == j) {
                        continue;
                    }
                    minor(rr, cc++) = m(r, c);
                }
                rr++;
            }
            Rational cof = leibniz_det(minor);
            inv(j, i) = ((i + j) % 2 ? -cof : cof) / det;
        }
    }
    return inv;
}

inline IntMatrix random_int(std::mt19937_64 &rng, std::size_t rows, std::size_t cols, long lo, long hi) {
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; r++) {
        for (std::size_t c = 0; c < cols; c++) {
            m(r, c) = static_cast<long>(uniform_int(rng, lo, hi));
        }
    }
    return m;
}

inline IntMatrix random_skew_int(std::mt19937_64 &rng, std::size_t n, long bound) {
    IntMatrix m(n, n);
    for (std::size_t r = 0; r < n; r++) {
        for (std::size_t c = r + 1; c < n; c++) {
            m(r, c) = static_cast<long>(uniform_int(rng, -bound, bound));
            m(c, r) = -m(r, c);
        }
    }
    return m;
}

// The split form x_1 x_{n+1} + ... as a 2n x 2n Gram matrix [[0, I], [I, 0]].
inline IntMatrix split_gram(std::size_t n) {
    IntMatrix j(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; i++) {
        j(i, n + i) = 1;
        j(n + i, i) = 1;
    }
    return j;
}

inline Theta flip_theta() {
    return Theta(RatMatrix{{0, q(1, 3)}, {q(-1, 3), 0}});
}

}  // namespace morita::testing
