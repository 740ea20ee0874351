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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include "morita/campaign.hpp"
#include "morita/embedding.hpp"
#include "morita/exact_linalg.hpp"
#include "morita/module_sim.hpp"
#include "morita/normal_form.hpp"
#include "test_support.hpp"

using namespace morita;
using morita::testing::int_matrix;
using morita::testing::q;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;

    void fail(const std::string &why) {
        if (passed) {
            detail = why;
        }
        passed = false;
    }
};

bool report(int id, const char *title, double limit_s, const std::function<Outcome()> &body) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception &e) {
        out.fail(std::string("exception: ") + e.what());
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed >= limit_s) {
        out.fail("runtime " + std::to_string(elapsed) + " s exceeds " + std::to_string(limit_s) + " s");
    }
    std::printf("criterion %d %s: %s (%.3f s, limit %.1f s)%s%s\n", id, title, out.passed ? "PASS" : "FAIL", elapsed,
                limit_s, out.detail.empty() ? "" : " - ", out.detail.c_str());
    std::fflush(stdout);
    return out.passed;
}

RatMatrix pullback(const EmbeddingMap &m) {
    return m.T.transpose() * m.J * m.T;
}

// Every identity recomputed from the raw outputs and the original g, theta.
std::string identity_failure(const GroupElement &g, const Theta &theta, const PipelineResult &r) {
    const EmbeddingData &d = r.data;
    for (const auto &name : certificate_names()) {
        bool found = false;
        for (const auto &c : d.certificates) {
            if (c.name == name) {
                found = true;
                if (!c.passed) {
                    return "certificate " + name + " failed";
                }
            }
        }
        if (!found) {
            return "certificate " + name + " missing";
        }
    }
    RatMatrix r0inv = to_rational(unimodular_inverse(r.R0));
    RatMatrix theta1 = r0inv * theta.matrix() * r0inv.transpose();
    if (d.theta.matrix() != theta1) {
        return "normalized theta";
    }
    if (pullback(d.Tmap) != theta1) {
        return "T^t J T != theta1";
    }
    if (pullback(d.dual.S) != -d.theta_prime.matrix()) {
        return "S^t J S != -theta'";
    }
    if (!is_integral(d.dual.S.T.transpose() * d.Tmap.J * d.Tmap.T)) {
        return "S^t J T not integral";
    }
    const GroupElement &gp = d.gprime;
    try {
        check_membership(gp.A(), gp.B(), gp.C(), gp.D());
    } catch (const MoritaError &e) {
        return std::string("g' not in the group: ") + e.what();
    }
    auto image = act(gp, d.theta);
    if (!image || image->matrix() != d.theta_prime.matrix()) {
        return "theta' != g' theta1";
    }
    GroupElement rebuilt = compose(compose(compose(mu(d.decomposition.N), rho(d.decomposition.Atilde)), gp),
                                   rho(unimodular_inverse(r.R0)));
    if (rebuilt != g) {
        return "g != mu(N) rho(Atilde) g' rho(R0^-1)";
    }
    auto target = act(g, theta);
    if (!target || r.chain.target != *target || r.chain.source != theta) {
        return "chain endpoints";
    }
    Theta current = r.chain.source;
    for (const auto &step : r.chain.steps) {
        RatMatrix m = to_rational(step.matrix);
        switch (step.kind) {
            case StepKind::IsoRho:
                current = Theta(m * current.matrix() * m.transpose());
                break;
            case StepKind::IsoMu:
                current = Theta(current.matrix() + m);
                break;
            case StepKind::HeisenbergModule:
                current = *act(gp, current);
                break;
        }
        if (step.target != current) {
            return "chain step replay";
        }
    }
    if (current != r.chain.target) {
        return "chain replay endpoint";
    }
    return {};
}

struct Drawn {
    GroupElement g;
    std::optional<Theta> theta;
};

Drawn draw(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    std::size_t len = static_cast<std::size_t>(uniform_int(rng, 1, 8));
    Drawn out{random_element(rng, len, n), std::nullopt};
    for (int attempt = 0; attempt <= 20 && !out.theta; attempt++) {
        Theta t = random_theta(rng, n, 12);
        if (act(out.g, t)) {
            out.theta = t;
        }
    }
    return out;
}

std::vector<ModuleDescriptor> small_descriptors;

Outcome flip_example() {
    Outcome out;
    PipelineResult r = pipeline(sigma_flip(2, {0, 1}), Theta(RatMatrix{{0, q(1, 3)}, {q(-1, 3), 0}}));
    const EmbeddingData &d = r.data;
    IntMatrix i2 = IntMatrix::identity(2);
    if (d.theta_prime.matrix() != RatMatrix{{0, -3}, {3, 0}}) {
        out.fail("theta'");
    }
    if (d.Tmap.T != RatMatrix{{q(1, 3), 0}, {0, 1}}) {
        out.fail("T");
    }
    if (d.dual.S.T != RatMatrix{{0, -1}, {3, 0}}) {
        out.fail("S");
    }
    if (d.A_script != RatMatrix{{0, 3}, {-3, 0}}) {
        out.fail("A_script");
    }
    if (d.gprime.A() != IntMatrix(2, 2) || d.gprime.B() != -i2 || d.gprime.C() != -i2 ||
        d.gprime.D() != IntMatrix(2, 2)) {
        out.fail("g'");
    }
    if (d.decomposition.N != IntMatrix(2, 2) || d.decomposition.Atilde != -i2) {
        out.fail("N, Atilde");
    }
    std::string why = identity_failure(sigma_flip(2, {0, 1}), Theta(RatMatrix{{0, q(1, 3)}, {q(-1, 3), 0}}), r);
    if (!why.empty()) {
        out.fail(why);
    }
    return out;
}

Outcome campaign() {
    Outcome out;
    std::size_t defined = 0, passed = 0;
    for (std::size_t n = 2; n <= 6; n++) {
        for (std::uint64_t s = 0; s < 50; s++) {
            std::uint64_t seed = 1000 * n + s;
            Drawn dr = draw(seed, n);
            if (!dr.theta) {
                continue;
            }
            defined++;
            try {
                PipelineResult r = pipeline(dr.g, *dr.theta);
                std::string why = identity_failure(dr.g, *dr.theta, r);
                if (!why.empty()) {
                    out.fail("n=" + std::to_string(n) + " seed=" + std::to_string(seed) + ": " + why);
                    continue;
                }
                passed++;
                if (r.data.sf.p <= 2 && r.data.sf.q() <= 2 && r.data.td.k() <= 1) {
                    small_descriptors.push_back(ModuleDescriptor::from_embedding(r.data));
                }
            } catch (const MoritaError &e) {
                out.fail("n=" + std::to_string(n) + " seed=" + std::to_string(seed) + ": " + e.what());
            }
        }
        CampaignConfig config;
        config.n = n;
        config.seed = n;
        config.trials = 50;
        CampaignReport rep = run_campaign(config);
        if (rep.count(TrialOutcome::Failed) != 0) {
            out.fail("run_campaign n=" + std::to_string(n) + " reported failures");
        }
    }
    out.detail = std::to_string(passed) + "/" + std::to_string(defined) + " defined cases" +
                 (out.passed ? "" : "; " + out.detail);
    return out;
}

Outcome group_identities() {
    Outcome out;
    std::mt19937_64 rng(31337);
    std::size_t undefined = 0;
    for (int trial = 0; trial < 500; trial++) {
        std::size_t n = static_cast<std::size_t>(uniform_int(rng, 2, 6));
        GroupElement g = random_element(rng, static_cast<std::size_t>(uniform_int(rng, 1, 8)), n);
        Theta theta = trial % 2 ? random_theta(rng, n, 2) : random_theta(rng, n);
        std::string at = " (trial " + std::to_string(trial) + ")";
        if (!(g.D() * g.C().transpose()).is_skew()) {
            out.fail("D C^t not skew" + at);
        }
        if (rank(g.C()) % 2 != 0) {
            out.fail("rank C odd" + at);
        }
        RatMatrix c = to_rational(g.C());
        RatMatrix ctd = c * theta.matrix() + to_rational(g.D());
        bool invertible = determinant(ctd) != 0;
        if (invertible && !(rational_inverse(ctd) * c).is_skew()) {
            out.fail("(C theta + D)^-1 C not skew" + at);
        }
        GroupElement g1 = compose(g, rho(normalize_right(g)));
        SpecialForm sf = detect_special_form(g1);
        Theta theta1 = *act(rho(unimodular_inverse(normalize_right(g))), theta);
        RatMatrix c1 = to_rational(g1.C());
        RatMatrix ctd1 = c1 * theta1.matrix() + to_rational(g1.D());
        DomainCheck dc = domain_check(sf, theta1);
        if (dc.defined != invertible || (determinant(ctd1) != 0) != invertible) {
            out.fail("domain_check disagrees with det(C theta + D)" + at);
        }
        undefined += !invertible;
        if (dc.defined) {
            RatMatrix expected(n, n);
            expected.set_block(0, 0, dc.F11);
            if (rational_inverse(ctd1) * c1 != expected) {
                out.fail("block identity" + at);
            }
        }
    }
    if (undefined == 0) {
        out.fail("no undefined case exercised");
    }
    return out;
}

bool alternating_ok(const IntMatrix &a, std::string &why) {
    AlternatingForm af = alternating_normal_form_int(a);
    if (af.R.transpose() * alternating_block(af.h, a.rows()) * af.R != a) {
        why = "alternating re-multiplication";
        return false;
    }
    if (!is_unimodular(af.R)) {
        why = "alternating R not unimodular";
        return false;
    }
    for (const auto &h : af.h) {
        if (h <= 0) {
            why = "alternating h not positive";
            return false;
        }
    }
    // The normal form and A have the same lattice invariants.
    IntMatrix block = alternating_block(af.h, a.rows());
    if (morita::testing::brute_invariant_factors(block) != morita::testing::brute_invariant_factors(a)) {
        why = "alternating form vs brute-force invariant factors";
        return false;
    }
    return true;
}

bool snf_ok(const IntMatrix &m, std::string &why) {
    SnfResult s = smith_normal_form(m);
    if (s.U * m * s.V != s.D || !is_unimodular(s.U) || !is_unimodular(s.V)) {
        why = "SNF re-multiplication";
        return false;
    }
    for (std::size_t r = 0; r < s.D.rows(); r++) {
        for (std::size_t c = 0; c < s.D.cols(); c++) {
            if (r != c && s.D(r, c) != 0) {
                why = "SNF not diagonal";
                return false;
            }
        }
    }
    if (s.invariant_factors() != morita::testing::brute_invariant_factors(m)) {
        why = "SNF vs brute-force invariant factors";
        return false;
    }
    return true;
}

Outcome linalg_oracles() {
    Outcome out;
    std::mt19937_64 rng(4242);
    std::string why;
    for (int i = 0; i < 1000 && out.passed; i++) {
        std::size_t rows = static_cast<std::size_t>(uniform_int(rng, 1, 3));
        std::size_t cols = static_cast<std::size_t>(uniform_int(rng, 1, 3));
        IntMatrix m = morita::testing::random_int(rng, rows, cols, -2, 2);
        if (!snf_ok(m, why)) {
            out.fail(why + " on " + format_matrix(m));
        }
        IntMatrix a = morita::testing::random_skew_int(rng, 2 * rows, 2);
        if (!alternating_ok(a, why)) {
            out.fail(why + " on " + format_matrix(a));
        }
    }
    for (int i = 0; i < 150 && out.passed; i++) {
        std::size_t rows = static_cast<std::size_t>(uniform_int(rng, 1, 6));
        std::size_t cols = static_cast<std::size_t>(uniform_int(rng, 1, 6));
        IntMatrix m = morita::testing::random_int(rng, rows, cols, -9, 9);
        if (!snf_ok(m, why)) {
            out.fail(why + " on " + format_matrix(m));
        }
        IntMatrix a = morita::testing::random_skew_int(rng, 2 * ((rows + 1) / 2), 9);
        if (!alternating_ok(a, why)) {
            out.fail(why + " on " + format_matrix(a));
        }
    }
    return out;
}

Outcome module_simulation() {
    Outcome out;
    if (small_descriptors.empty()) {
        out.fail("no descriptors with p <= 2, q <= 2, k <= 1 from criterion 2");
        return out;
    }
    double worst = 0;
    for (std::size_t i = 0; i < small_descriptors.size(); i++) {
        SimulationReport rep = simulate(small_descriptors[i], 9000 + i, 100);
        worst = std::max({worst, rep.module_relation, rep.left_relation, rep.commutation});
    }
    if (worst >= 1e-9) {
        out.fail("residual " + std::to_string(worst));
    }

    PipelineResult r = pipeline(sigma_flip(2, {0, 1}), Theta(RatMatrix{{0, q(1, 3)}, {q(-1, 3), 0}}));
    ModuleDescriptor d = ModuleDescriptor::from_embedding(r.data);
    TestFunction f = gaussian(GaussianSpec{}, d);
    Complex value = right_action(right_action(f, {1, 0}, d), {0, 1}, d)(PointM{{0.0}, {}, {}});
    double expected = std::exp(-std::numbers::pi / 9);
    if (std::abs(value - Complex(expected)) >= 1e-9) {
        out.fail("flip pointwise value " + std::to_string(value.real()));
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu descriptors, max residual %.2e, flip value %.10f", small_descriptors.size(),
                  worst, value.real());
    out.detail = buf + (out.passed ? "" : "; " + out.detail);
    return out;
}

Outcome degenerate_cases() {
    Outcome out;
    struct Case {
        const char *name;
        GroupElement g;
        Theta theta;
    };
    IntMatrix n3 = int_matrix({{0, 1, -2}, {-1, 0, 3}, {2, -3, 0}});
    Theta theta3(RatMatrix{{0, q(1, 2), q(2, 5)}, {q(-1, 2), 0, q(-1, 7)}, {q(-2, 5), q(1, 7), 0}});
    std::vector<Case> cases{
        {"p=0", mu(n3), theta3},
        {"k=0", sigma_flip(3, {0, 1}), theta3},
        {"q=0", compose(sigma_flip(2, {0, 1}), mu(int_matrix({{0, 3}, {-3, 0}}))),
         Theta(RatMatrix{{0, q(1, 5)}, {q(-1, 5), 0}})},
    };
    for (const auto &c : cases) {
        PipelineResult r = pipeline(c.g, c.theta);
        std::size_t p = r.data.sf.p, qd = r.data.sf.q(), k = r.data.td.k();
        std::string name = c.name;
        bool shape = (name == "p=0" && p == 0) || (name == "k=0" && k == 0) || (name == "q=0" && qd == 0);
        if (!shape) {
            out.fail(name + " case has the wrong shape");
        }
        std::string why = identity_failure(c.g, c.theta, r);
        if (!why.empty()) {
            out.fail(name + ": " + why);
        }
    }
    return out;
}

}  // namespace

int main() {
    bool ok = true;
    ok &= report(1, "worked n=2 flip", 0.1, flip_example);
    ok &= report(2, "randomized campaign n=2..6", 60.0, campaign);
    ok &= report(3, "group identities", 30.0, group_identities);
    ok &= report(4, "exact linear algebra oracles", 60.0, linalg_oracles);
    ok &= report(5, "module simulation", 30.0, module_simulation);
    ok &= report(6, "degenerate closure", 5.0, degenerate_cases);
    return ok ? 0 : 1;
}
