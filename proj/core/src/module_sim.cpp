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

#include "morita/module_sim.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>

namespace morita {

namespace {

std::string shape_of(const RatMatrix &m) {
    return m.shape_string();
}

double to_double(const Rational &r) {
    return r.get_d();
}

std::int64_t to_i64(const Integer &v) {
    auto out = to_int64(v);
    if (!out) {
        throw MoritaError(ErrorCode::ShapeMismatch, "lattice coordinate exceeds 64 bits: " + to_string(v));
    }
    return *out;
}

std::int64_t residue(std::int64_t v, std::int64_t n) {
    std::int64_t r = v % n;
    return r < 0 ? r + n : r;
}

Complex cis(double turns) {
    double t = turns - std::round(turns);
    double angle = 2 * std::numbers::pi * t;
    return {std::cos(angle), std::sin(angle)};
}

// Shift of a point by an exact M-vector with sign +1 or -1.
PointM shifted(const PointM &m, const MPart &by, int sign, const ModuleDescriptor &d) {
    PointM out = m;
    for (std::size_t i = 0; i < out.u.size(); i++) {
        out.u[i] += sign * to_double(by.u[i]);
    }
    for (std::size_t i = 0; i < out.a.size(); i++) {
        out.a[i] += sign * to_i64(by.a[i]);
    }
    for (std::size_t i = 0; i < out.w.size(); i++) {
        std::int64_t nj = to_i64(d.torsion()[i]);
        out.w[i] = residue(out.w[i] + sign * to_i64(by.w[i]), nj);
    }
    return out;
}

MhatPart negated(MhatPart h, const ModuleDescriptor &d) {
    for (auto &v : h.u) {
        v = -v;
    }
    for (auto &v : h.a) {
        v = frac(-v);
    }
    for (std::size_t i = 0; i < h.w.size(); i++) {
        h.w[i] = mod_floor(-h.w[i], d.torsion()[i]);
    }
    return h;
}

// Neumaier compensated accumulator.
class CompensatedSum {
   public:
    void add(double v) {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const {
        return sum_ + comp_;
    }

   private:
    double sum_ = 0;
    double comp_ = 0;
};

struct Action {
    Rational half;  // v.J'v/2
    MPart shift;
    MhatPart character;
};

Action prepare(const RatMatrix &map, const std::vector<std::int64_t> &x, const ModuleDescriptor &d) {
    auto v = apply_map(map, x);
    auto [mp, mh] = split_coordinates(v, d);
    return Action{half_form(v, d), std::move(mp), std::move(mh)};
}

std::vector<std::int64_t> add(const std::vector<std::int64_t> &x, const std::vector<std::int64_t> &y) {
    std::vector<std::int64_t> out(x.size());
    for (std::size_t i = 0; i < x.size(); i++) {
        out[i] = x[i] + y[i];
    }
    return out;
}

}  // namespace

ModuleDescriptor::ModuleDescriptor(std::size_t p, std::size_t q, std::vector<Integer> torsion, RatMatrix t,
                                   RatMatrix s, Theta theta, Theta theta_prime, RatMatrix j, RatMatrix jprime)
    : p_(p),
      q_(q),
      torsion_(std::move(torsion)),
      t_(std::move(t)),
      s_(std::move(s)),
      theta_(std::move(theta)),
      theta_prime_(std::move(theta_prime)),
      j_(std::move(j)),
      jprime_(std::move(jprime)) {
    std::size_t n = 2 * p_ + q_;
    std::size_t amb = ambient();
    if (t_.rows() != amb || t_.cols() != n || s_.rows() != amb || s_.cols() != n) {
        throw MoritaError(ErrorCode::ShapeMismatch,
                          "descriptor maps must be " + std::to_string(amb) + "x" + std::to_string(n) + ", got " +
                              shape_of(t_) + " and " + shape_of(s_));
    }
    if (theta_.n() != n || theta_prime_.n() != n) {
        throw MoritaError(ErrorCode::ShapeMismatch, "descriptor theta dimension mismatch");
    }
    if (j_.rows() != amb || !j_.is_square() || jprime_.rows() != amb || !jprime_.is_square()) {
        throw MoritaError(ErrorCode::ShapeMismatch, "descriptor forms must be " + std::to_string(amb) + " square");
    }
    for (const auto &nj : torsion_) {
        if (nj <= 0) {
            throw MoritaError(ErrorCode::ShapeMismatch, "torsion orders must be positive");
        }
    }
    for (std::size_t r = 0; r < amb; r++) {
        for (std::size_t c = 0; c < amb; c++) {
            const Rational &v = j_(r, c);
            const Rational &w = jprime_(r, c);
            if (w != (v > 0 ? v : Rational(0))) {
                throw MoritaError(ErrorCode::ShapeMismatch, "J' is not the positive part of J", format_matrix(jprime_));
            }
        }
    }
}

ModuleDescriptor ModuleDescriptor::from_embedding(const EmbeddingData &data) {
    return ModuleDescriptor(data.Tmap.p, data.Tmap.q, data.td.nj, data.Tmap.T, data.dual.S.T, data.theta,
                            data.theta_prime, data.Tmap.J, data.Tmap.Jprime);
}

std::pair<MPart, MhatPart> split_coordinates(const std::vector<Rational> &v, const ModuleDescriptor &d) {
    if (v.size() != d.ambient()) {
        throw MoritaError(ErrorCode::ShapeMismatch, "H* vector has " + std::to_string(v.size()) +
                                                        " coordinates, expected " + std::to_string(d.ambient()));
    }
    std::size_t p = d.p(), q = d.q(), k = d.k();
    auto integral = [&](std::size_t idx, const char *slot) -> Integer {
        if (v[idx].get_den() != 1) {
            throw MoritaError(ErrorCode::ShapeMismatch,
                              std::string("non-integer ") + slot + " coordinate " + to_string(v[idx]));
        }
        return v[idx].get_num();
    };
    MPart m;
    MhatPart h;
    for (std::size_t i = 0; i < p; i++) {
        m.u.push_back(v[i]);
        h.u.push_back(v[p + i]);
    }
    for (std::size_t i = 0; i < q; i++) {
        m.a.push_back(integral(2 * p + i, "lattice"));
        h.a.push_back(frac(v[2 * p + q + i]));
    }
    std::size_t base = 2 * p + 2 * q;
    for (std::size_t i = 0; i < k; i++) {
        m.w.push_back(mod_floor(integral(base + i, "torsion"), d.torsion()[i]));
        h.w.push_back(mod_floor(integral(base + k + i, "torsion"), d.torsion()[i]));
    }
    return {std::move(m), std::move(h)};
}

Complex unit_phase(const Rational &t) {
    return cis(to_double(frac(t)));
}

Complex pairing(const PointM &m, const MhatPart &mhat, const ModuleDescriptor &d) {
    Rational exact = 0;
    for (std::size_t i = 0; i < m.a.size(); i++) {
        exact += Rational(Integer(static_cast<long>(m.a[i]))) * mhat.a[i];
    }
    for (std::size_t i = 0; i < m.w.size(); i++) {
        exact += Rational(Integer(static_cast<long>(m.w[i])) * mhat.w[i], d.torsion()[i]);
    }
    exact.canonicalize();
    double real = 0;
    for (std::size_t i = 0; i < m.u.size(); i++) {
        double uh = to_double(mhat.u[i]);
        real += m.u[i] * uh;
    }
    return cis(to_double(frac(exact)) + real);
}

TestFunction gaussian(const GaussianSpec &spec, const ModuleDescriptor &d) {
    std::vector<double> torsion;
    for (const auto &nj : d.torsion()) {
        torsion.push_back(to_double(Rational(nj)));
    }
    auto at = [](const std::vector<double> &v, std::size_t i) { return i < v.size() ? v[i] : 0.0; };
    return TestFunction{[spec, torsion, at](const PointM &m) {
                            double decay = 0;
                            double turns = 0;
                            for (std::size_t i = 0; i < m.u.size(); i++) {
                                double du = m.u[i] - at(spec.center, i);
                                decay += spec.scale * du * du;
                                turns += at(spec.frequency, i) * m.u[i];
                            }
                            for (std::size_t i = 0; i < m.a.size(); i++) {
                                double da = static_cast<double>(m.a[i]) - at(spec.lattice_center, i);
                                decay += spec.lattice_scale * da * da;
                            }
                            for (std::size_t i = 0; i < m.w.size(); i++) {
                                std::int64_t t = i < spec.torsion_character.size() ? spec.torsion_character[i] : 0;
                                turns += static_cast<double>(t * m.w[i] % static_cast<std::int64_t>(torsion[i])) /
                                         torsion[i];
                            }
                            return std::exp(-std::numbers::pi * decay) * cis(turns);
                        },
                        DecayClass::Gaussian};
}

TestFunction combine(TestFunction f, Complex c, TestFunction g) {
    return TestFunction{[f = std::move(f), c, g = std::move(g)](const PointM &m) { return f(m) + c * g(m); },
                        DecayClass::Gaussian};
}

GaussianSpec random_gaussian_spec(std::mt19937_64 &rng, const ModuleDescriptor &d) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> width(0.1, 0.5);
    GaussianSpec spec;
    spec.scale = width(rng);
    spec.lattice_scale = width(rng);
    for (std::size_t i = 0; i < d.p(); i++) {
        spec.center.push_back(unit(rng));
        spec.frequency.push_back(unit(rng));
    }
    for (std::size_t i = 0; i < d.q(); i++) {
        spec.lattice_center.push_back(unit(rng));
    }
    for (const auto &nj : d.torsion()) {
        spec.torsion_character.push_back(uniform_int(rng, 0, to_i64(nj) - 1));
    }
    return spec;
}

PointM random_point(std::mt19937_64 &rng, const ModuleDescriptor &d) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    PointM m;
    for (std::size_t i = 0; i < d.p(); i++) {
        m.u.push_back(unit(rng));
    }
    for (std::size_t i = 0; i < d.q(); i++) {
        m.a.push_back(uniform_int(rng, -3, 3));
    }
    for (const auto &nj : d.torsion()) {
        m.w.push_back(uniform_int(rng, 0, to_i64(nj) - 1));
    }
    return m;
}

std::vector<std::int64_t> random_lattice_vector(std::mt19937_64 &rng, std::size_t n, std::int64_t bound) {
    std::vector<std::int64_t> x(n);
    for (auto &v : x) {
        v = uniform_int(rng, -bound, bound);
    }
    return x;
}

std::vector<Rational> apply_map(const RatMatrix &map, const std::vector<std::int64_t> &x) {
    if (x.size() != map.cols()) {
        throw MoritaError(ErrorCode::ShapeMismatch, "lattice vector length " + std::to_string(x.size()) +
                                                        " does not match " + map.shape_string());
    }
    std::vector<Rational> out(map.rows());
    for (std::size_t r = 0; r < map.rows(); r++) {
        for (std::size_t c = 0; c < map.cols(); c++) {
            out[r] += map(r, c) * Rational(Integer(static_cast<long>(x[c])));
        }
    }
    return out;
}

Rational half_form(const std::vector<Rational> &v, const ModuleDescriptor &d) {
    const RatMatrix &jp = d.Jprime();
    Rational total = 0;
    for (std::size_t r = 0; r < jp.rows(); r++) {
        for (std::size_t c = 0; c < jp.cols(); c++) {
            if (jp(r, c) != 0) {
                total += v[r] * jp(r, c) * v[c];
            }
        }
    }
    return total / 2;
}

TestFunction right_action(const TestFunction &f, const std::vector<std::int64_t> &x, const ModuleDescriptor &d) {
    Action act = prepare(d.T(), x, d);
    Complex phase = unit_phase(-act.half);
    return TestFunction{[f, act = std::move(act), phase, &d](const PointM &m) {
                            return phase * pairing(m, act.character, d) * f(shifted(m, act.shift, -1, d));
                        },
                        f.decay};
}

TestFunction left_action(const std::vector<std::int64_t> &x, const TestFunction &f, const ModuleDescriptor &d) {
    Action act = prepare(d.S(), x, d);
    Complex phase = unit_phase(-act.half);
    MhatPart character = negated(act.character, d);
    return TestFunction{[f, shift = std::move(act.shift), character = std::move(character), phase, &d](
                            const PointM &m) { return phase * pairing(m, character, d) * f(shifted(m, shift, 1, d)); },
                        f.decay};
}

Complex cocycle(const Theta &theta, const std::vector<std::int64_t> &x, const std::vector<std::int64_t> &y) {
    const RatMatrix &t = theta.matrix();
    Rational total = 0;
    for (std::size_t r = 0; r < t.rows(); r++) {
        for (std::size_t c = 0; c < t.cols(); c++) {
            total += Rational(Integer(static_cast<long>(x[r] * y[c]))) * t(r, c);
        }
    }
    return unit_phase(total / 2);
}

double check_module_relation(const std::vector<std::int64_t> &x, const std::vector<std::int64_t> &y,
                             const TestFunction &f, const std::vector<PointM> &samples, const ModuleDescriptor &d) {
    TestFunction lhs = right_action(right_action(f, x, d), y, d);
    TestFunction rhs = right_action(f, add(x, y), d);
    Complex sigma = cocycle(d.theta(), x, y);
    double worst = 0;
    for (const auto &m : samples) {
        worst = std::max(worst, std::abs(lhs(m) - sigma * rhs(m)));
    }
    return worst;
}

double check_left_relation(const std::vector<std::int64_t> &x, const std::vector<std::int64_t> &y,
                           const TestFunction &f, const std::vector<PointM> &samples, const ModuleDescriptor &d) {
    TestFunction lhs = left_action(x, left_action(y, f, d), d);
    TestFunction rhs = left_action(add(x, y), f, d);
    Complex sigma = cocycle(d.theta_prime(), x, y);
    double worst = 0;
    for (const auto &m : samples) {
        worst = std::max(worst, std::abs(lhs(m) - sigma * rhs(m)));
    }
    return worst;
}

double check_bimodule_commutation(const std::vector<std::int64_t> &x, const std::vector<std::int64_t> &y,
                                  const TestFunction &f, const std::vector<PointM> &samples,
                                  const ModuleDescriptor &d) {
    TestFunction lhs = left_action(y, right_action(f, x, d), d);
    TestFunction rhs = right_action(left_action(y, f, d), x, d);
    double worst = 0;
    for (const auto &m : samples) {
        worst = std::max(worst, std::abs(lhs(m) - rhs(m)));
    }
    return worst;
}

namespace {

struct Grid {
    std::vector<double> nodes;
    std::vector<double> weights;
};

Grid trapezoid(double lo, double hi, std::size_t intervals) {
    Grid g;
    double h = (hi - lo) / static_cast<double>(intervals);
    for (std::size_t i = 0; i <= intervals; i++) {
        g.nodes.push_back(lo + h * static_cast<double>(i));
        g.weights.push_back(i == 0 || i == intervals ? h / 2 : h);
    }
    return g;
}

Complex integrate(const std::function<Complex(const PointM &)> &integrand, const ModuleDescriptor &d,
                  double half_width, std::size_t intervals, std::int64_t radius) {
    Grid grid = trapezoid(-half_width, half_width, intervals);
    std::size_t p = d.p(), q = d.q(), k = d.k();
    std::size_t real_count = 1;
    for (std::size_t i = 0; i < p; i++) {
        real_count *= grid.nodes.size();
    }
    std::size_t lattice_side = static_cast<std::size_t>(2 * radius + 1);
    std::size_t lattice_count = 1;
    for (std::size_t i = 0; i < q; i++) {
        lattice_count *= lattice_side;
    }
    std::vector<std::int64_t> orders;
    std::size_t torsion_count = 1;
    for (const auto &nj : d.torsion()) {
        orders.push_back(to_i64(nj));
        torsion_count *= static_cast<std::size_t>(orders.back());
    }
    double torsion_weight = 1.0 / static_cast<double>(torsion_count);

    CompensatedSum re, im;
    PointM m;
    m.u.resize(p);
    m.a.resize(q);
    m.w.resize(k);
    for (std::size_t ri = 0; ri < real_count; ri++) {
        double weight = torsion_weight;
        std::size_t rest = ri;
        for (std::size_t i = 0; i < p; i++) {
            std::size_t idx = rest % grid.nodes.size();
            rest /= grid.nodes.size();
            m.u[i] = grid.nodes[idx];
            weight *= grid.weights[idx];
        }
        for (std::size_t li = 0; li < lattice_count; li++) {
            std::size_t lrest = li;
            for (std::size_t i = 0; i < q; i++) {
                m.a[i] = static_cast<std::int64_t>(lrest % lattice_side) - radius;
                lrest /= lattice_side;
            }
            for (std::size_t ti = 0; ti < torsion_count; ti++) {
                std::size_t trest = ti;
                for (std::size_t i = 0; i < k; i++) {
                    m.w[i] = static_cast<std::int64_t>(trest % static_cast<std::size_t>(orders[i]));
                    trest /= static_cast<std::size_t>(orders[i]);
                }
                Complex v = integrand(m) * weight;
                re.add(v.real());
                im.add(v.imag());
            }
        }
    }
    return {re.value(), im.value()};
}

}  // namespace

Complex inner_product_numeric(const TestFunction &f, const TestFunction &g, const std::vector<std::int64_t> &x,
                              const ModuleDescriptor &d, const QuadratureConfig &config) {
    if (d.p() > 2) {
        throw MoritaError(ErrorCode::ShapeMismatch, "numeric inner product supports p <= 2");
    }
    Action act = prepare(d.T(), x, d);
    Complex phase = unit_phase(-act.half);
    MhatPart character = negated(act.character, d);
    auto integrand = [&](const PointM &m) {
        return pairing(m, character, d) * g(shifted(m, act.shift, 1, d)) * std::conj(f(m));
    };

    double width = config.half_width;
    for (const auto &u : act.shift.u) {
        width += std::abs(to_double(u));
    }
    std::int64_t radius = config.lattice_radius;
    for (const auto &a : act.shift.a) {
        radius += std::abs(to_i64(a));
    }

    std::size_t intervals = config.points;
    Complex previous = integrate(integrand, d, width, intervals, radius);
    for (std::size_t level = 0; level < config.max_refinements; level++) {
        intervals *= 2;
        Complex refined = integrate(integrand, d, width, intervals, radius);
        if (std::abs(refined - previous) <= config.tolerance) {
            Complex widened = integrate(integrand, d, 1.5 * width, 3 * intervals / 2, radius + 4);
            if (std::abs(widened - refined) > config.tolerance) {
                throw MoritaError(ErrorCode::QuadratureUnconverged,
                                  "truncation error " + std::to_string(std::abs(widened - refined)));
            }
            return d.K() * phase * refined;
        }
        previous = refined;
    }
    throw MoritaError(ErrorCode::QuadratureUnconverged,
                      "trapezoid rule did not converge after " + std::to_string(config.max_refinements) +
                          " refinements");
}

SimulationReport simulate(const ModuleDescriptor &d, std::uint64_t seed, std::size_t triples) {
    struct Trial {
        std::vector<std::int64_t> x, y;
        GaussianSpec spec;
        PointM m;
    };
    std::mt19937_64 rng(seed);
    std::vector<Trial> trials;
    for (std::size_t i = 0; i < triples; i++) {
        Trial t;
        t.x = random_lattice_vector(rng, d.n(), 3);
        t.y = random_lattice_vector(rng, d.n(), 3);
        t.spec = random_gaussian_spec(rng, d);
        t.m = random_point(rng, d);
        trials.push_back(std::move(t));
    }

    struct Partial {
        double module = 0, left = 0, comm = 0, phase = 0;
    };
    auto run = [&](std::size_t lo, std::size_t hi) {
        Partial part;
        for (std::size_t i = lo; i < hi; i++) {
            const Trial &t = trials[i];
            TestFunction f = gaussian(t.spec, d);
            std::vector<PointM> samples{t.m};
            part.module = std::max(part.module, check_module_relation(t.x, t.y, f, samples, d));
            part.left = std::max(part.left, check_left_relation(t.x, t.y, f, samples, d));
            part.comm = std::max(part.comm, check_bimodule_commutation(t.x, t.y, f, samples, d));
            for (const auto *map : {&d.T(), &d.S()}) {
                Complex ph = unit_phase(-half_form(apply_map(*map, t.x), d));
                part.phase = std::max(part.phase, std::abs(std::abs(ph) - 1.0));
            }
        }
        return part;
    };

    std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 8));
    std::size_t chunk = (triples + workers - 1) / std::max<std::size_t>(workers, 1);
    std::vector<std::future<Partial>> futures;
    for (std::size_t lo = 0; lo < triples; lo += chunk) {
        futures.push_back(std::async(std::launch::async, run, lo, std::min(triples, lo + chunk)));
    }
    SimulationReport report;
    report.triples = triples;
    for (auto &fut : futures) {
        Partial part = fut.get();
        report.module_relation = std::max(report.module_relation, part.module);
        report.left_relation = std::max(report.left_relation, part.left);
        report.commutation = std::max(report.commutation, part.comm);
        report.max_phase_deviation = std::max(report.max_phase_deviation, part.phase);
    }
    return report;
}

}  // namespace morita
