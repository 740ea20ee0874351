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

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "morita/embedding.hpp"

namespace morita {

using Complex = std::complex<double>;

/// Everything needed to realize the Heisenberg bimodule over
/// M = R^p x Z^q x W, W = Z_{n_1} x ... x Z_{n_k}. Coordinates on
/// H* = M x M^ are ordered (u, u^, a, a^, w, w^).
class ModuleDescriptor {
   public:
    /// Throws ShapeMismatch when T, S, J, J' and the torsion orders disagree,
    /// or when J' is not the positive part of J.
    ModuleDescriptor(std::size_t p, std::size_t q, std::vector<Integer> torsion, RatMatrix t, RatMatrix s,
                     Theta theta, Theta theta_prime, RatMatrix j, RatMatrix jprime);

    /// Takes the normalized pair the embedding data was built for.
    static ModuleDescriptor from_embedding(const EmbeddingData &data);

    std::size_t p() const noexcept {
        return p_;
    }
    std::size_t q() const noexcept {
        return q_;
    }
    std::size_t k() const noexcept {
        return torsion_.size();
    }
    std::size_t n() const noexcept {
        return 2 * p_ + q_;
    }
    std::size_t ambient() const noexcept {
        return n() + q_ + 2 * k();
    }
    const std::vector<Integer> &torsion() const noexcept {
        return torsion_;
    }
    const RatMatrix &T() const noexcept {
        return t_;
    }
    const RatMatrix &S() const noexcept {
        return s_;
    }
    const Theta &theta() const noexcept {
        return theta_;
    }
    const Theta &theta_prime() const noexcept {
        return theta_prime_;
    }
    const RatMatrix &J() const noexcept {
        return j_;
    }
    const RatMatrix &Jprime() const noexcept {
        return jprime_;
    }
    double K() const noexcept {
        return 1.0;
    }

   private:
    std::size_t p_, q_;
    std::vector<Integer> torsion_;
    RatMatrix t_, s_;
    Theta theta_, theta_prime_;
    RatMatrix j_, jprime_;
};

/// A point of M. Residues satisfy 0 <= w_j < n_j.
struct PointM {
    std::vector<double> u;
    std::vector<std::int64_t> a;
    std::vector<std::int64_t> w;
};

/// Exact M-part of an H* vector.
struct MPart {
    std::vector<Rational> u;
    std::vector<Integer> a;
    std::vector<Integer> w;  // reduced mod n_j
};

/// Exact M^-part of an H* vector.
struct MhatPart {
    std::vector<Rational> u;
    std::vector<Rational> a;  // reduced mod 1
    std::vector<Integer> w;   // reduced mod n_j
};

/// Splits an H* vector. Throws ShapeMismatch on a wrong length or when a
/// lattice slot (a, w, w^) carries a non-integer.
std::pair<MPart, MhatPart> split_coordinates(const std::vector<Rational> &v, const ModuleDescriptor &d);

/// <m, m^> = e(u.u^ + a.a^ + sum_j w_j w^_j / n_j).
Complex pairing(const PointM &m, const MhatPart &mhat, const ModuleDescriptor &d);

/// e(t) = exp(2 pi i t) with t reduced mod 1 exactly first.
Complex unit_phase(const Rational &t);

enum class DecayClass { Gaussian };

/// A Schwartz function on M given by a pure evaluation rule.
struct TestFunction {
    std::function<Complex(const PointM &)> eval;
    DecayClass decay = DecayClass::Gaussian;

    Complex operator()(const PointM &m) const {
        return eval(m);
    }
};

/// exp(-pi s |u - c|^2) e(xi . u) exp(-pi s_a |a - b|^2) e(sum_j t_j w_j / n_j).
struct GaussianSpec {
    std::vector<double> center;
    double scale = 1.0;
    std::vector<double> frequency;
    std::vector<double> lattice_center;
    double lattice_scale = 1.0;
    std::vector<std::int64_t> torsion_character;
};

TestFunction gaussian(const GaussianSpec &spec, const ModuleDescriptor &d);

/// f + c g.
TestFunction combine(TestFunction f, Complex c, TestFunction g);

GaussianSpec random_gaussian_spec(std::mt19937_64 &rng, const ModuleDescriptor &d);
PointM random_point(std::mt19937_64 &rng, const ModuleDescriptor &d);
std::vector<std::int64_t> random_lattice_vector(std::mt19937_64 &rng, std::size_t n, std::int64_t bound);

/// Image T(x) or S(x) of an integer vector as an exact H* vector.
std::vector<Rational> apply_map(const RatMatrix &map, const std::vector<std::int64_t> &x);

/// v . J' v / 2, exact.
Rational half_form(const std::vector<Rational> &v, const ModuleDescriptor &d);

/// (f U_x)(m) = e(-T(x).J'T(x)/2) <m, T''(x)> f(m - T'(x)). The returned
/// closure refers to `d`, which must outlive it (same for left_action).
TestFunction right_action(const TestFunction &f, const std::vector<std::int64_t> &x, const ModuleDescriptor &d);

/// (V_x f)(m) = e(-S(x).J'S(x)/2) <m, -S''(x)> f(m + S'(x)).
TestFunction left_action(const std::vector<std::int64_t> &x, const TestFunction &f, const ModuleDescriptor &d);

/// sigma(x, y) = e(x . theta y / 2).
Complex cocycle(const Theta &theta, const std::vector<std::int64_t> &x, const std::vector<std::int64_t> &y);

/// max |((f U_x) U_y)(m) - sigma_theta(x, y) (f U_{x+y})(m)|.
double check_module_relation(const std::vector<std::int64_t> &x, const std::vector<std::int64_t> &y,
                             const TestFunction &f, const std::vector<PointM> &samples, const ModuleDescriptor &d);

/// max |(V_x (V_y f))(m) - sigma_theta'(x, y) (V_{x+y} f)(m)|.
double check_left_relation(const std::vector<std::int64_t> &x, const std::vector<std::int64_t> &y,
                           const TestFunction &f, const std::vector<PointM> &samples, const ModuleDescriptor &d);

/// max |(V_y (f U_x))(m) - ((V_y f) U_x)(m)|.
double check_bimodule_commutation(const std::vector<std::int64_t> &x, const std::vector<std::int64_t> &y,
                                  const TestFunction &f, const std::vector<PointM> &samples,
                                  const ModuleDescriptor &d);

struct QuadratureConfig {
    double half_width = 10.0;     // u integrated over [-half_width, half_width]
    std::size_t points = 64;      // initial trapezoid points per real axis
    std::int64_t lattice_radius = 10;
    double tolerance = 1e-10;
    std::size_t max_refinements = 6;
};

/// <f, g>(x) = e(-T(x).J'T(x)/2) int_M <m, -T''(x)> g(m + T'(x)) conj(f(m)) dm
/// with Lebesgue x counting x normalized counting measure. Requires p <= 2.
/// Throws ShapeMismatch (p > 2) or QuadratureUnconverged.
Complex inner_product_numeric(const TestFunction &f, const TestFunction &g, const std::vector<std::int64_t> &x,
                              const ModuleDescriptor &d, const QuadratureConfig &config = {});

struct SimulationReport {
    std::size_t triples = 0;
    double module_relation = 0;
    double left_relation = 0;
    double commutation = 0;
    double max_phase_deviation = 0;  // max ||phase| - 1| over all action phases
};

/// Runs the three relation checks over `triples` random (x, y, m, f) drawn
/// from `seed`, with |x_i|, |y_i| <= 3. Samples are evaluated in parallel.
SimulationReport simulate(const ModuleDescriptor &d, std::uint64_t seed, std::size_t triples);

}  // namespace morita
