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

#include "morita/embedding.hpp"

#include "morita/exact_linalg.hpp"

namespace morita {

void CertificateLog::record(std::string name, bool passed, std::string detail, std::string witness) {
    entries_.push_back(Certificate{std::move(name), passed, std::move(detail), std::move(witness)});
}

void CertificateLog::require(std::string name, bool passed, ErrorCode code, std::string detail, std::string witness) {
    if (!passed) {
        std::string message = name + ": " + detail;
        record(std::move(name), false, std::move(detail), witness);
        throw MoritaError(code, message, std::move(witness));
    }
    record(std::move(name), true, std::move(detail));
}

bool CertificateLog::all_passed() const {
    for (const auto &c : entries_) {
        if (!c.passed) {
            return false;
        }
    }
    return true;
}

bool EmbeddingData::all_passed() const {
    for (const auto &c : certificates) {
        if (!c.passed) {
            return false;
        }
    }
    return !certificates.empty();
}

Integer TorsionData::torsion_order() const {
    Integer order = 1;
    for (const auto &v : nj) {
        order *= v;
    }
    return order;
}

RatMatrix EmbeddingMap::tilde() const {
    return T.block(0, 0, n(), n());
}

MoritaChain MoritaChain::compact() const {
    MoritaChain out{source, target, {}};
    for (const auto &step : steps) {
        if (!(step.source == step.target)) {
            out.steps.push_back(step);
        }
    }
    return out;
}

const std::vector<std::string> &certificate_names() {
    static const std::vector<std::string> names = {
        "special_form.detect",
        "special_form.z_unique",
        "domain.block_identity",
        "torsion.normal_form",
        "torsion.bezout",
        "J.split",
        "T.pullback",
        "T.lattice",
        "T.tilde_invertible",
        "Tbar.invertible",
        "S.closed_form",
        "S.lattice",
        "S.tilde_invertible",
        "duality.pairing_integral",
        "duality.lattice_det",
        "theta_prime.pullback",
        "theta_prime.blocks",
        "gprime.integral",
        "gprime.membership",
        "gprime.action",
        "gprime.closed_form",
        "A_script.dual_map",
        "decompose.Ctilde_zero",
        "decompose.N_skew",
        "decompose.reassembly",
        "chain.normalized_action",
        "chain.endpoint",
        "chain.input_reassembly",
    };
    return names;
}

namespace {

void maybe_require(CertificateLog *log, std::string name, bool passed, ErrorCode code, std::string detail,
                   std::string witness = {}) {
    if (log) {
        log->require(std::move(name), passed, code, std::move(detail), std::move(witness));
    } else if (!passed) {
        throw MoritaError(code, name + ": " + detail, std::move(witness));
    }
}

RatMatrix rat_identity(std::size_t n) {
    return RatMatrix::identity(n);
}

template <typename T>
Matrix<T> diag_of(const std::vector<T> &v) {
    return Matrix<T>::diagonal(v);
}

// blk(P1, P1, -I_{2p-2k})
RatMatrix torsion_scaling(const TorsionData &td, std::size_t p) {
    return block_diag<Rational>({td.P1, td.P1, -rat_identity(2 * p - 2 * td.k())});
}

// [[0, -X, 0], [X, 0, 0], [0, 0, 0]] of size 2p for a k x k block X.
template <typename T>
Matrix<T> paired_block(const Matrix<T> &x, std::size_t p) {
    std::size_t k = x.rows();
    Matrix<T> out(2 * p, 2 * p);
    out.set_block(0, k, -x);
    out.set_block(k, 0, x);
    return out;
}

// Rows of H* carrying lattice (integer) coordinates: Z^q, Z^k, Z^k.
bool lattice_rows_integral(const EmbeddingMap &map) {
    std::size_t n = map.n();
    RatMatrix zq = map.T.block(2 * map.p, 0, map.q, n);
    RatMatrix tors = map.T.block(n + map.q, 0, 2 * map.k, n);
    return is_integral(zq) && is_integral(tors);
}

RatMatrix positive_part(const RatMatrix &j) {
    RatMatrix out = j;
    for (std::size_t r = 0; r < out.rows(); r++) {
        for (std::size_t c = 0; c < out.cols(); c++) {
            if (out(r, c) < 0) {
                out(r, c) = 0;
            }
        }
    }
    return out;
}

}  // namespace

RatMatrix assemble_form(std::size_t p, std::size_t q, const TorsionData &td) {
    std::size_t k = td.k();
    RatMatrix jq(2 * q, 2 * q);
    jq.set_block(0, q, rat_identity(q));
    jq.set_block(q, 0, -rat_identity(q));
    RatMatrix j2(2 * k, 2 * k);
    j2.set_block(0, k, td.P1);
    j2.set_block(k, 0, -td.P1);
    return block_diag<Rational>({standard_symplectic(p), jq, j2});
}

TorsionData build_torsion_data(const RatMatrix &z, CertificateLog *log) {
    if (!z.is_skew()) {
        throw MoritaError(ErrorCode::NotSkew, "Z is not skew-symmetric", format_matrix(z));
    }
    TorsionData td;
    td.m = 1;
    for (const auto &v : z.data()) {
        mpz_lcm(td.m.get_mpz_t(), td.m.get_mpz_t(), v.get_den_mpz_t());
    }
    IntMatrix mz = *to_integer(z * Rational(td.m));
    AlternatingForm form = alternating_normal_form_int(mz);
    td.R = form.R;
    td.h = form.h;
    maybe_require(log, "torsion.normal_form",
                  td.R.transpose() * alternating_block(td.h, mz.rows()) * td.R == mz && is_unimodular(td.R),
                  ErrorCode::InternalMismatch, "m Z = R^t [[0,P,0],[-P,0,0],[0,0,0]] R with R unimodular",
                  format_matrix(mz));

    bool bezout_ok = true;
    std::vector<Rational> inv_n;
    for (const auto &h : td.h) {
        Rational ratio(h, td.m);
        ratio.canonicalize();
        Integer mj = ratio.get_num();
        Integer nj = ratio.get_den();
        ExtGcd eg = ext_gcd(mj, nj);
        bezout_ok = bezout_ok && eg.g == 1 && eg.c * mj + eg.d * nj == 1 && mj * td.m == h * nj;
        td.mj.push_back(mj);
        td.nj.push_back(nj);
        td.cj.push_back(eg.c);
        td.dj.push_back(eg.d);
        inv_n.push_back(Rational(1) / Rational(nj));
    }
    maybe_require(log, "torsion.bezout", bezout_ok, ErrorCode::InternalMismatch,
                  "m_j/n_j = h_j/m in lowest terms and c_j m_j + d_j n_j = 1");
    td.P1 = diag_of(inv_n);
    td.P2 = diag_of(td.mj);
    td.Q1 = diag_of(td.dj);
    td.Q2 = diag_of(td.cj);
    std::vector<Integer> nn = td.nj;
    nn.insert(nn.end(), td.nj.begin(), td.nj.end());
    td.T4 = diag_of(nn);
    return td;
}

EmbeddingMap build_T(const SpecialForm &sf, const TorsionData &td, const Theta &theta, CertificateLog *log) {
    std::size_t p = sf.p, q = sf.q(), k = td.k(), n = sf.n;
    const RatMatrix &t = theta.matrix();
    RatMatrix t11 = symplectic_factor_rational(t.block(0, 0, 2 * p, 2 * p) - sf.Z);
    RatMatrix t31 = t.block(2 * p, 0, q, 2 * p);
    RatMatrix t22 = t.block(2 * p, 2 * p, q, q);
    RatMatrix t32(q, q);
    for (std::size_t i = 0; i < q; i++) {
        for (std::size_t j = i + 1; j < q; j++) {
            t32(i, j) = t22(i, j);
        }
    }

    EmbeddingMap map;
    map.p = p;
    map.q = q;
    map.k = k;
    map.T = RatMatrix(n + q + 2 * k, n);
    map.T.set_block(0, 0, t11);
    map.T.set_block(2 * p, 2 * p, rat_identity(q));
    map.T.set_block(n, 0, t31);
    map.T.set_block(n, 2 * p, t32);
    // T2 = [[P2, 0, 0], [0, I_k, 0]] R, zero on the Z^q columns.
    IntMatrix selector(2 * k, 2 * p);
    selector.set_block(0, 0, td.P2);
    selector.set_block(k, k, IntMatrix::identity(k));
    map.T.set_block(n + q, 0, to_rational(selector * td.R));

    map.J = assemble_form(p, q, td);
    map.Jprime = positive_part(map.J);

    maybe_require(log, "J.split", map.J == map.Jprime - map.Jprime.transpose(), ErrorCode::InternalMismatch,
                  "J = J' - J'^t");
    RatMatrix pulled = map.T.transpose() * map.J * map.T;
    maybe_require(log, "T.pullback", pulled == t, ErrorCode::InternalMismatch, "T^t J T = theta",
                  format_matrix(pulled));
    maybe_require(log, "T.lattice", lattice_rows_integral(map), ErrorCode::InternalMismatch,
                  "T(Z^n) lies in R^p x R*^p x Z^q x R*^q x Z^k x Z^k", format_matrix(map.T));
    maybe_require(log, "T.tilde_invertible", determinant(map.tilde()) != 0, ErrorCode::InternalMismatch,
                  "gamma o T is invertible", format_matrix(map.tilde()));
    return map;
}

IntMatrix lift_embedding(const TorsionData &td, std::size_t p, std::size_t q) {
    std::size_t k = td.k(), n = 2 * p + q;
    IntMatrix phi1(n + q + 2 * k, n);
    for (std::size_t j = 0; j < k; j++) {
        phi1(j, j) = -td.dj[j];
        phi1(n + q + j, j) = td.cj[j];
        phi1(n + q + k + j, k + j) = 1;
    }
    for (std::size_t j = 2 * k; j < 2 * p; j++) {
        phi1(j, j) = 1;
    }
    for (std::size_t j = 0; j < q; j++) {
        phi1(2 * p + q + j, 2 * p + j) = 1;
    }
    IntMatrix lift = block_diag<Integer>({td.R.transpose(), IntMatrix::identity(2 * q + 2 * k)});
    return lift * phi1;
}

DualMap build_S(const SpecialForm &sf, const TorsionData &td, const EmbeddingMap &tmap, const Theta &theta,
                CertificateLog *log) {
    std::size_t p = sf.p, q = sf.q(), k = td.k(), n = sf.n;
    std::size_t amb = tmap.ambient();

    RatMatrix tbar(amb, amb);
    tbar.set_block(0, 0, tmap.T);
    tbar.set_block(2 * p + q, n, -rat_identity(q));
    tbar.set_block(n + q, n + q, to_rational(td.T4));
    RatMatrix tbar_t_j = tbar.transpose() * tmap.J;
    Rational det = determinant(tbar_t_j);
    maybe_require(log, "Tbar.invertible", det != 0, ErrorCode::InternalMismatch, "Tbar is invertible",
                  format_matrix(tbar));

    DualMap out;
    out.Tbar = tbar;
    out.phi = lift_embedding(td, p, q);
    out.S.p = p;
    out.S.q = q;
    out.S.k = k;
    out.S.J = tmap.J;
    out.S.Jprime = tmap.Jprime;
    out.S.T = rational_inverse(tbar_t_j) * to_rational(out.phi);

    // Closed form.
    const RatMatrix &t = theta.matrix();
    RatMatrix t11 = tmap.T.block(0, 0, 2 * p, 2 * p);
    RatMatrix t31 = tmap.T.block(n, 0, q, 2 * p);
    RatMatrix t32 = tmap.T.block(n, 2 * p, q, q);
    RatMatrix j0 = standard_symplectic(p);
    RatMatrix j0_t11 = j0 * rational_inverse(t11.transpose());
    (void)t;
    RatMatrix closed(amb, n);
    closed.set_block(0, 0, j0_t11 * to_rational(td.R.transpose()) * torsion_scaling(td, p));
    closed.set_block(0, 2 * p, -(j0_t11 * t31.transpose()));
    closed.set_block(2 * p, 2 * p, rat_identity(q));
    closed.set_block(n, 2 * p, t32.transpose());
    closed.set_block(n + q, k, -rat_identity(k));
    closed.set_block(n + q + k, 0, to_rational(td.Q2));
    maybe_require(log, "S.closed_form", closed == out.S.T, ErrorCode::InternalMismatch,
                  "(Tbar^t J)^{-1} phi equals the W1/W2/Q2 closed form", format_matrix(out.S.T));
    maybe_require(log, "S.lattice", lattice_rows_integral(out.S), ErrorCode::InternalMismatch,
                  "S(Z^n) lies in R^p x R*^p x Z^q x R*^q x Z^k x Z^k", format_matrix(out.S.T));
    maybe_require(log, "S.tilde_invertible", determinant(out.S.tilde()) != 0, ErrorCode::InternalMismatch,
                  "gamma o S is invertible", format_matrix(out.S.tilde()));
    return out;
}

void verify_duality(const EmbeddingMap &tmap, const DualMap &dual, const TorsionData &td, CertificateLog *log) {
    std::size_t p = tmap.p, q = tmap.q, k = tmap.k, n = tmap.n();
    RatMatrix pairing = dual.S.T.transpose() * tmap.J * tmap.T;
    maybe_require(log, "duality.pairing_integral", is_integral(pairing), ErrorCode::DualityFailed,
                  "S^t J T is integral", format_matrix(pairing));

    // Ambient lattice Z^{2p} x Z^{q+2k} (the 0^q slot dropped).
    IntMatrix t2 = *to_integer(tmap.T.block(n + q, 0, 2 * k, n));
    IntMatrix delta(n + 2 * k, 2 * k);
    delta.set_block(0, 0, t2.transpose().block(0, 0, 2 * p, 2 * k));
    delta.set_block(n, 0, td.T4);
    bool slot_zero = dual.phi.block(2 * p, 0, q, n).is_zero() && t2.block(0, 2 * p, 2 * k, q).is_zero();
    IntMatrix lifted = vstack<Integer>({dual.phi.block(0, 0, 2 * p, n), dual.phi.block(2 * p + q, 0, q + 2 * k, n)});
    IntMatrix stacked = hstack<Integer>({delta, lifted});
    Integer det = determinant(stacked);
    maybe_require(log, "duality.lattice_det", slot_zero && (det == 1 || det == -1), ErrorCode::DualityFailed,
                  "Z^{2p} x 0^q x Z^{q+2k} = Delta (+) phi(Z^n), det = " + to_string(det), format_matrix(stacked));
}

Theta theta_prime(const DualMap &dual, const SpecialForm &sf, const TorsionData &td, const Theta &theta,
                  const RatMatrix &f11, CertificateLog *log) {
    std::size_t p = sf.p, q = sf.q();
    const RatMatrix &s = dual.S.T;
    RatMatrix sjs = s.transpose() * dual.S.J * s;
    RatMatrix tp = -sjs;
    maybe_require(log, "theta_prime.pullback", tp.is_skew() && s.transpose() * dual.S.J * s == -tp,
                  ErrorCode::InternalMismatch, "S^t J S = -theta'", format_matrix(sjs));

    const RatMatrix &t = theta.matrix();
    RatMatrix t12 = t.block(0, 2 * p, 2 * p, q);
    RatMatrix t21 = t.block(2 * p, 0, q, 2 * p);
    RatMatrix t22 = t.block(2 * p, 2 * p, q, q);
    RatMatrix scale = torsion_scaling(td, p);
    RatMatrix r = to_rational(td.R);
    RatMatrix rt = r.transpose();
    RatMatrix qp = to_rational(td.Q2) * td.P1;
    RatMatrix b11 = scale * r * f11 * rt * scale + paired_block(qp, p);
    RatMatrix b12 = scale * r * f11 * t12;
    RatMatrix b21 = -(t21 * f11 * rt * scale);
    RatMatrix b22 = t22 - t21 * f11 * t12;
    RatMatrix closed = assemble(b11, b12, b21, b22);
    maybe_require(log, "theta_prime.blocks", closed == tp, ErrorCode::InternalMismatch,
                  "theta' equals the four displayed block formulas", format_matrix(tp));
    return Theta(std::move(tp));
}

GPrimeData build_gprime(const SpecialForm &sf, const TorsionData &td, const Theta &theta, const Theta &theta_prime,
                        const RatMatrix &f11, CertificateLog *log) {
    std::size_t p = sf.p, q = sf.q(), k = td.k(), n = sf.n;
    const RatMatrix &t = theta.matrix();
    const RatMatrix &tp = theta_prime.matrix();
    RatMatrix t12 = t.block(0, 2 * p, 2 * p, q);
    RatMatrix scale = torsion_scaling(td, p);
    RatMatrix r = to_rational(td.R);

    RatMatrix a_script(n, n);
    a_script.set_block(0, 0, f11 * r.transpose() * scale);
    a_script.set_block(0, 2 * p, f11 * t12);
    a_script.set_block(2 * p, 2 * p, -rat_identity(q));

    RatMatrix phi(n, n);
    phi.set_block(0, 0, f11);

    RatMatrix a_inv = rational_inverse(a_script);
    RatMatrix c_prime = a_inv * phi;
    RatMatrix d_prime = a_inv - c_prime * t;
    RatMatrix a_prime = a_script.transpose() + tp * c_prime;
    RatMatrix b_prime = tp * a_inv - a_prime * t;

    auto ai = to_integer(a_prime), bi = to_integer(b_prime), ci = to_integer(c_prime), di = to_integer(d_prime);
    maybe_require(log, "gprime.integral", ai && bi && ci && di, ErrorCode::NotIntegral, "g' has integer entries",
                  format_matrix(assemble(a_prime, b_prime, c_prime, d_prime)));

    std::optional<GroupElement> gp;
    std::string why;
    try {
        gp = check_membership(*ai, *bi, *ci, *di);
    } catch (const MoritaError &e) {
        why = e.what();
    }
    maybe_require(log, "gprime.membership", gp.has_value(), ErrorCode::MembershipFailed, "g' in SO(n, n | Z)", why);

    auto image = act(*gp, theta);
    maybe_require(log, "gprime.action", image && image->matrix() == tp, ErrorCode::ActionMismatch,
                  "g' theta = theta'", image ? format_matrix(image->matrix()) : "undefined");

    IntMatrix r_inv_t = unimodular_inverse(td.R).transpose();
    IntMatrix iq = IntMatrix::identity(q);
    IntMatrix c_closed = block_diag<Integer>(
        {block_diag<Integer>({td.T4, -IntMatrix::identity(2 * p - 2 * k)}) * r_inv_t, IntMatrix(q, q)});
    // The q x q corners carry -I_q: that is what the A', D' formulas give
    // with A_script's -I_q corner.
    IntMatrix d_closed = block_diag<Integer>({paired_block(td.P2, p) * td.R, -iq});
    IntMatrix a_closed = block_diag<Integer>({paired_block(td.Q2, p) * r_inv_t, -iq});
    IntMatrix b_closed = block_diag<Integer>(
        {block_diag<Integer>({td.Q1, td.Q1, -IntMatrix::identity(2 * p - 2 * k)}) * td.R, IntMatrix(q, q)});
    bool closed_ok = gp->A() == a_closed && gp->B() == b_closed && gp->C() == c_closed && gp->D() == d_closed;
    maybe_require(log, "gprime.closed_form", closed_ok, ErrorCode::ClosedFormMismatch,
                  "formula route equals the closed-form A', B', C', D'", format_matrix(gp->assembled()));

    return GPrimeData{std::move(a_script), std::move(phi), std::move(*gp)};
}

void check_dual_map(const EmbeddingMap &tmap, const DualMap &dual, const RatMatrix &a_script, CertificateLog *log) {
    RatMatrix direct = -(rational_inverse(tmap.tilde()) * dual.S.tilde());
    maybe_require(log, "A_script.dual_map", direct == a_script, ErrorCode::InternalMismatch,
                  "A_script = -Ttilde^{-1} Stilde", format_matrix(direct));
}

Decomposition decompose(const GroupElement &g, const GroupElement &gprime, CertificateLog *log) {
    GroupElement gt = compose(g, invert_element(gprime));
    maybe_require(log, "decompose.Ctilde_zero", gt.C().is_zero(), ErrorCode::CtildeNonzero, "Ctilde = 0",
                  format_matrix(gt.C()));
    const IntMatrix &at = gt.A();
    std::size_t n = g.n();
    if (at.transpose() * gt.D() != IntMatrix::identity(n) || !is_unimodular(at)) {
        throw MoritaError(ErrorCode::ReassemblyMismatch, "Atilde^t Dtilde != I", format_matrix(gt.assembled()));
    }
    IntMatrix nm = gt.B() * at.transpose();
    maybe_require(log, "decompose.N_skew", nm.is_skew(), ErrorCode::NotSkew, "N = Btilde Atilde^t is skew",
                  format_matrix(nm));
    GroupElement rebuilt = compose(compose(mu(nm), rho(at)), gprime);
    maybe_require(log, "decompose.reassembly", rebuilt == g, ErrorCode::ReassemblyMismatch,
                  "g = mu(N) rho(Atilde) g'", format_matrix(rebuilt.assembled()));
    return Decomposition{std::move(nm), at};
}

EmbeddingData build_embedding(const GroupElement &g, const Theta &theta, CertificateLog *trace) {
    CertificateLog local;
    CertificateLog &log = trace ? *trace : local;
    auto recorded = [&log](const char *name, const char *detail, auto &&step) {
        try {
            auto out = step();
            log.record(name, true, detail);
            return out;
        } catch (const MoritaError &e) {
            if (e.code() != ErrorCode::Undefined) {
                log.record(name, false, e.what(), e.witness());
            }
            throw;
        }
    };
    SpecialForm sf = recorded("special_form.detect", "C = [[C11, 0], [C21, 0]], D = [[-C11 Z, D12], [-C21 Z, D22]]",
                              [&] { return detect_special_form(g); });
    RatMatrix z_rev = sf.p == 0 ? RatMatrix() : resolve_z_reversed(g, sf.p);
    log.require("special_form.z_unique", z_rev == sf.Z, ErrorCode::InternalMismatch,
                "Z is independent of the solve pivot order", format_matrix(z_rev));

    DomainCheck dc = recorded("domain.block_identity", "(C theta + D)^{-1} C = [[F11, 0], [0, 0]]", [&] {
        DomainCheck out = domain_check(sf, theta);
        if (!out.defined) {
            throw MoritaError(ErrorCode::Undefined, "theta11 - Z is singular", format_matrix(theta.matrix()));
        }
        return out;
    });

    TorsionData td = build_torsion_data(sf.Z, &log);
    EmbeddingMap tmap = build_T(sf, td, theta, &log);
    DualMap dual = build_S(sf, td, tmap, theta, &log);
    verify_duality(tmap, dual, td, &log);
    Theta tp = theta_prime(dual, sf, td, theta, dc.F11, &log);
    GPrimeData gpd = build_gprime(sf, td, theta, tp, dc.F11, &log);
    check_dual_map(tmap, dual, gpd.A_script, &log);
    Decomposition dec = decompose(g, gpd.gprime, &log);

    return EmbeddingData{
        .sf = std::move(sf),
        .td = std::move(td),
        .theta = theta,
        .F11 = std::move(dc.F11),
        .Tmap = std::move(tmap),
        .dual = std::move(dual),
        .theta_prime = std::move(tp),
        .A_script = std::move(gpd.A_script),
        .Phi = std::move(gpd.Phi),
        .gprime = std::move(gpd.gprime),
        .decomposition = std::move(dec),
        .certificates = log.entries(),
    };
}

PipelineResult pipeline(const GroupElement &g, const Theta &theta, CertificateLog *trace) {
    auto target = act(g, theta);
    if (!target) {
        throw MoritaError(ErrorCode::Undefined, "C theta + D is singular", format_matrix(theta.matrix()));
    }
    IntMatrix r0 = normalize_right(g);
    IntMatrix r0_inv = unimodular_inverse(r0);
    GroupElement g1 = compose(g, rho(r0));
    RatMatrix r0_inv_q = to_rational(r0_inv);
    Theta theta1(r0_inv_q * theta.matrix() * r0_inv_q.transpose());

    CertificateLog local;
    CertificateLog &log = trace ? *trace : local;
    EmbeddingData data = build_embedding(g1, theta1, &log);

    auto normalized = act(g1, theta1);
    log.require("chain.normalized_action", normalized && *normalized == *target, ErrorCode::ActionMismatch,
                "g1 theta1 = g theta");

    const IntMatrix &at = data.decomposition.Atilde;
    const IntMatrix &nm = data.decomposition.N;
    RatMatrix atq = to_rational(at);
    Theta rotated(atq * data.theta_prime.matrix() * atq.transpose());
    Theta shifted(rotated.matrix() + to_rational(nm));

    MoritaChain chain{theta, shifted, {}};
    chain.steps.push_back(ChainStep{StepKind::IsoRho, r0_inv, theta, theta1});
    chain.steps.push_back(ChainStep{StepKind::HeisenbergModule, IntMatrix(), theta1, data.theta_prime});
    chain.steps.push_back(ChainStep{StepKind::IsoRho, at, data.theta_prime, rotated});
    chain.steps.push_back(ChainStep{StepKind::IsoMu, nm, rotated, shifted});

    log.require("chain.endpoint", shifted == *target, ErrorCode::ActionMismatch,
                "chain endpoint equals g theta", format_matrix(shifted.matrix()));
    GroupElement rebuilt = compose(compose(compose(mu(nm), rho(at)), data.gprime), rho(r0_inv));
    log.require("chain.input_reassembly", rebuilt == g, ErrorCode::ReassemblyMismatch,
                "g = mu(N) rho(Atilde) g' rho(R0^{-1})", format_matrix(rebuilt.assembled()));

    data.certificates = log.entries();
    return PipelineResult{std::move(r0), std::move(data), std::move(chain)};
}

}  // namespace morita
