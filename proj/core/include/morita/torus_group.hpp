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

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "morita/matrix.hpp"

namespace morita {

/// A point of the space of skew-symmetric n x n matrices, restricted to
/// rational entries so that every identity downstream is decidable.
class Theta {
   public:
    /// Throws NotSkew, ShapeMismatch (non-square or n < 2).
    explicit Theta(RatMatrix m);

    std::size_t n() const noexcept {
        return m_.rows();
    }
    const RatMatrix &matrix() const noexcept {
        return m_;
    }

    friend bool operator==(const Theta &a, const Theta &b) {
        return a.m_ == b.m_;
    }

   private:
    RatMatrix m_;
};

/// An element g = [[A, B], [C, D]] of SO(n, n | Z). Instances only come out
/// of check_membership (or operations that re-run it), so holding one means
/// the block relations and det = 1 have been verified.
class GroupElement {
   public:
    std::size_t n() const noexcept {
        return a_.rows();
    }
    const IntMatrix &A() const noexcept {
        return a_;
    }
    const IntMatrix &B() const noexcept {
        return b_;
    }
    const IntMatrix &C() const noexcept {
        return c_;
    }
    const IntMatrix &D() const noexcept {
        return d_;
    }
    IntMatrix assembled() const;

    static GroupElement identity(std::size_t n);

    friend bool operator==(const GroupElement &x, const GroupElement &y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
    }

   private:
    friend GroupElement check_membership(IntMatrix, IntMatrix, IntMatrix, IntMatrix);
    GroupElement(IntMatrix a, IntMatrix b, IntMatrix c, IntMatrix d);

    IntMatrix a_, b_, c_, d_;
};

/// Validates A^tC + C^tA = 0, B^tD + D^tB = 0, A^tD + C^tB = I, det g = 1
/// and (redundantly) that DC^t is skew. Throws RelationViolated naming the
/// failing identity, DeterminantNotOne, or ShapeMismatch.
GroupElement check_membership(IntMatrix a, IntMatrix b, IntMatrix c, IntMatrix d);

/// (D^t, B^t, C^t, A^t).
GroupElement invert_element(const GroupElement &g);
GroupElement compose(const GroupElement &g, const GroupElement &h);

/// [[R, 0], [0, (R^{-1})^t]]; throws NotUnimodular.
GroupElement rho(const IntMatrix &r);
/// [[I, N], [0, I]]; throws NotSkew.
GroupElement mu(const IntMatrix &n);
/// Swaps x_j <-> x_{n+j} for j in `support` (0-based). Throws OddSupport.
GroupElement sigma_flip(std::size_t n, const std::vector<std::size_t> &support);

/// Fractional linear action (A theta + B)(C theta + D)^{-1}; nullopt when
/// C theta + D is singular. The result and (C theta + D)^{-1} C are checked
/// skew (InternalMismatch otherwise).
std::optional<Theta> act(const GroupElement &g, const Theta &theta);

/// Bounded uniform integer in [lo, hi] by rejection sampling; kept here so
/// seeded streams are identical across standard libraries.
std::int64_t uniform_int(std::mt19937_64 &rng, std::int64_t lo, std::int64_t hi);

/// Random GL(n, Z) element as a product of elementary column operations.
IntMatrix random_unimodular(std::mt19937_64 &rng, std::size_t n, std::size_t steps = 3);

/// Deterministic product of `word_length` random generators drawn from
/// rho(random unimodular), mu(skew, entries in [-3, 3]) and sigma_flip(even J).
GroupElement random_element(std::uint64_t seed, std::size_t word_length, std::size_t n);
GroupElement random_element(std::mt19937_64 &rng, std::size_t word_length, std::size_t n);

/// Random skew theta with numerators in [-max_den, max_den] and
/// denominators in [1, max_den].
Theta random_theta(std::mt19937_64 &rng, std::size_t n, std::int64_t max_den = 12);

}  // namespace morita
