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

#include <gtest/gtest.h>

#include "morita/exact_linalg.hpp"
#include "test_support.hpp"

using namespace morita;
using morita::testing::int_matrix;
using morita::testing::q;

namespace {

ErrorCode code_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const MoritaError &e) {
        return e.code();
    }
    ADD_FAILURE() << "expected MoritaError";
    return ErrorCode::InternalMismatch;
}

GroupElement flip2() {
    return check_membership(IntMatrix(2, 2), IntMatrix::identity(2), IntMatrix::identity(2), IntMatrix(2, 2));
}

}  // namespace

TEST(theta, validation) {
    EXPECT_EQ(code_of([] { Theta(RatMatrix{{0, 1}, {1, 0}}); }), ErrorCode::NotSkew);
    EXPECT_EQ(code_of([] { Theta(RatMatrix{{0}}); }), ErrorCode::ShapeMismatch);
    EXPECT_EQ(code_of([] { Theta(RatMatrix(2, 3)); }), ErrorCode::ShapeMismatch);
}

TEST(check_membership, examples) {
    EXPECT_EQ(check_membership(IntMatrix::identity(3), IntMatrix(3, 3), IntMatrix(3, 3), IntMatrix::identity(3)),
              GroupElement::identity(3));
    GroupElement f = flip2();
    EXPECT_EQ(f.B(), IntMatrix::identity(2));
    EXPECT_EQ(code_of([] {
                  check_membership(IntMatrix::identity(2) * Integer(2), IntMatrix(2, 2), IntMatrix(2, 2),
                                   IntMatrix::identity(2));
              }),
              ErrorCode::RelationViolated);
}

TEST(check_membership, odd_flip_has_determinant_minus_one) {
    // A single coordinate swap preserves the form but has det -1.
    IntMatrix a = int_matrix({{0, 0}, {0, 1}});
    IntMatrix b = int_matrix({{1, 0}, {0, 0}});
    EXPECT_EQ(code_of([&] { check_membership(a, b, b, a); }), ErrorCode::DeterminantNotOne);
}

TEST(invert_element, examples) {
    EXPECT_EQ(invert_element(GroupElement::identity(2)), GroupElement::identity(2));
    IntMatrix r = int_matrix({{1, 1}, {0, 1}});
    EXPECT_EQ(invert_element(rho(r)), rho(unimodular_inverse(r)));
    EXPECT_EQ(invert_element(flip2()), flip2());
}

TEST(compose, examples) {
    std::mt19937_64 rng(1);
    GroupElement g = random_element(rng, 5, 3);
    EXPECT_EQ(compose(g, GroupElement::identity(3)), g);
    EXPECT_EQ(compose(g, invert_element(g)), GroupElement::identity(3));
    IntMatrix r1 = int_matrix({{1, 2}, {0, 1}});
    IntMatrix r2 = int_matrix({{0, 1}, {-1, 3}});
    EXPECT_EQ(compose(rho(r1), rho(r2)), rho(r1 * r2));
}

TEST(generators, examples) {
    EXPECT_EQ(rho(IntMatrix::identity(3)), GroupElement::identity(3));
    EXPECT_EQ(mu(IntMatrix(3, 3)), GroupElement::identity(3));
    EXPECT_EQ(rho(int_matrix({{1, 1}, {0, 1}})).D(), int_matrix({{1, 0}, {-1, 1}}));
    EXPECT_EQ(code_of([] { rho(int_matrix({{2, 0}, {0, 1}})); }), ErrorCode::NotUnimodular);
    EXPECT_EQ(code_of([] { mu(int_matrix({{0, 1}, {1, 0}})); }), ErrorCode::NotSkew);
    EXPECT_EQ(sigma_flip(3, {}), GroupElement::identity(3));
    EXPECT_EQ(sigma_flip(2, {0, 1}), flip2());
    EXPECT_EQ(code_of([] { sigma_flip(2, {0}); }), ErrorCode::OddSupport);
}

TEST(act, examples) {
    Theta theta = morita::testing::flip_theta();
    IntMatrix n = int_matrix({{0, 2}, {-2, 0}});
    EXPECT_EQ(act(mu(n), theta)->matrix(), theta.matrix() + to_rational(n));
    IntMatrix r = int_matrix({{2, 1}, {1, 1}});
    RatMatrix rq = to_rational(r);
    EXPECT_EQ(act(rho(r), theta)->matrix(), rq * theta.matrix() * rq.transpose());
    EXPECT_EQ(act(flip2(), theta)->matrix(), (RatMatrix{{0, -3}, {3, 0}}));
    EXPECT_FALSE(act(flip2(), Theta(RatMatrix(2, 2))).has_value());
}

TEST(random_element, examples) {
    EXPECT_EQ(random_element(9, 0, 4), GroupElement::identity(4));
    EXPECT_EQ(random_element(9, 6, 4), random_element(9, 6, 4));
}

TEST(group, invariants_on_random_words) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 200; trial++) {
        std::size_t n = static_cast<std::size_t>(uniform_int(rng, 2, 5));
        GroupElement g = random_element(rng, static_cast<std::size_t>(uniform_int(rng, 0, 8)), n);
        IntMatrix m = g.assembled();
        IntMatrix form = morita::testing::split_gram(n);
        ASSERT_EQ(m.transpose() * form * m, form);
        ASSERT_EQ(determinant(m), 1);
        ASSERT_TRUE((g.D() * g.C().transpose()).is_skew());
        ASSERT_EQ(to_rational(invert_element(g).assembled()), rational_inverse(to_rational(m)));
    }
}

TEST(act, partial_group_action) {
    std::mt19937_64 rng(3);
    int both = 0;
    for (int trial = 0; trial < 200; trial++) {
        std::size_t n = static_cast<std::size_t>(uniform_int(rng, 2, 4));
        GroupElement g = random_element(rng, 4, n);
        GroupElement h = random_element(rng, 4, n);
        Theta theta = random_theta(rng, n);
        auto inner = act(h, theta);
        auto whole = act(compose(g, h), theta);
        if (!inner) {
            continue;
        }
        auto outer = act(g, *inner);
        if (!outer) {
            continue;
        }
        both++;
        ASSERT_TRUE(whole.has_value());
        ASSERT_EQ(*outer, *whole);
        ASSERT_TRUE(outer->matrix().is_skew());
    }
    EXPECT_GT(both, 100);
}

TEST(uniform_int, bounds) {
    std::mt19937_64 rng(4);
    std::vector<int> seen(7, 0);
    for (int i = 0; i < 7000; i++) {
        auto v = uniform_int(rng, -3, 3);
        ASSERT_GE(v, -3);
        ASSERT_LE(v, 3);
        seen[static_cast<std::size_t>(v + 3)]++;
    }
    for (int c : seen) {
        EXPECT_GT(c, 800);
    }
}
