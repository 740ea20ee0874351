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

#include <optional>
#include <string>
#include <vector>

#include "morita/normal_form.hpp"
#include "morita/torus_group.hpp"

namespace morita {

/// One named exact check. On failure `witness` holds the offending matrix.
struct Certificate {
    std::string name;
    bool passed = false;
    std::string detail;
    std::string witness;
};

/// Collects certificates; `require` records and then throws `code` when the
/// predicate failed.
class CertificateLog {
   public:
    void record(std::string name, bool passed, std::string detail, std::string witness = {});
    void require(std::string name, bool passed, ErrorCode code, std::string detail, std::string witness = {});

    const std::vector<Certificate> &entries() const noexcept {
        return entries_;
    }
    bool all_passed() const;

   private:
    std::vector<Certificate> entries_;
};

/// Torsion bookkeeping for m Z = R^t [[0, P, 0], [-P, 0, 0], [0, 0, 0]] R with
/// m_j / n_j = h_j / m in lowest terms and c_j m_j + d_j n_j = 1.
struct TorsionData {
    Integer m;
    IntMatrix R;
    std::vector<Integer> h;
    std::vector<Integer> mj, nj, cj, dj;
    RatMatrix P1;  // diag(1/n_j)
    IntMatrix P2;  // diag(m_j)
    IntMatrix Q1;  // diag(d_j)
    IntMatrix Q2;  // diag(c_j)
    IntMatrix T4;  // diag(n_1..n_k, n_1..n_k)

    std::size_t k() const {
        return h.size();
    }
    /// Order of W = Z_{n_1} x ... x Z_{n_k}.
    Integer torsion_order() const;
};

/// A linear map L* -> H* with H* = R^p x R*^p x R^q x R*^q x R^k x R*^k, together
/// with the 2-form J on H* and J' (negative entries of J replaced by 0).
struct EmbeddingMap {
    std::size_t p = 0, q = 0, k = 0;
    RatMatrix T;  // (n + q + 2k) x n
    RatMatrix J;
    RatMatrix Jprime;

    std::size_t n() const {
        return 2 * p + q;
    }
    std::size_t ambient() const {
        return n() + q + 2 * k;
    }
    /// Rows of the R^p x R*^p x R^q coordinates (square n x n).
    RatMatrix tilde() const;
};

/// The 2-form J = blk(J0, [[0, I_q], [-I_q, 0]], [[0, P1], [-P1, 0]]).
RatMatrix assemble_form(std::size_t p, std::size_t q, const TorsionData &td);

/// Closed-form S block data needed by both the direct and the closed route.
struct DualMap {
    EmbeddingMap S;
    RatMatrix Tbar;
    IntMatrix phi;  // Z^n -> Z^{2p} x 0^q x Z^{q+2k}
};

struct GPrimeData {
    RatMatrix A_script;
    RatMatrix Phi;
    GroupElement gprime;
};

struct Decomposition {
    IntMatrix N;
    IntMatrix Atilde;
};

struct EmbeddingData {
    SpecialForm sf;
    TorsionData td;
    Theta theta;  // the (normalized) source matrix the maps are built for
    RatMatrix F11;
    EmbeddingMap Tmap;
    DualMap dual;
    Theta theta_prime;
    RatMatrix A_script;
    RatMatrix Phi;
    GroupElement gprime;
    Decomposition decomposition;
    std::vector<Certificate> certificates;

    bool all_passed() const;
};

enum class StepKind { IsoRho, IsoMu, HeisenbergModule };

struct ChainStep {
    StepKind kind;
    IntMatrix matrix;  // R for IsoRho, N for IsoMu, empty for the module step
    Theta source;
    Theta target;
};

struct MoritaChain {
    Theta source;
    Theta target;
    std::vector<ChainStep> steps;

    /// Drops steps whose source and target coincide.
    MoritaChain compact() const;
};

struct PipelineResult {
    IntMatrix R0;
    EmbeddingData data;
    MoritaChain chain;
};

TorsionData build_torsion_data(const RatMatrix &z, CertificateLog *log = nullptr);

/// Requires theta11 - Z invertible (propagates Singular otherwise).
EmbeddingMap build_T(const SpecialForm &sf, const TorsionData &td, const Theta &theta, CertificateLog *log = nullptr);

/// Z^n -> Z^{2p} x 0^q x Z^{q+2k}, composed with blk(R^t, I).
IntMatrix lift_embedding(const TorsionData &td, std::size_t p, std::size_t q);

/// S = (Tbar^t J)^{-1} phi, cross-checked against the closed form
/// [[W1, W2], [[0, -I_k, 0], [Q2, 0, 0]], 0]]. Throws InternalMismatch.
DualMap build_S(const SpecialForm &sf, const TorsionData &td, const EmbeddingMap &tmap, const Theta &theta,
                CertificateLog *log = nullptr);

/// S^t J T integral and |det [Delta | phi(Z^n)]| = 1. Throws DualityFailed.
void verify_duality(const EmbeddingMap &tmap, const DualMap &dual, const TorsionData &td,
                    CertificateLog *log = nullptr);

/// theta' = -S^t J S, cross-checked against the four block formulas.
/// Throws InternalMismatch.
Theta theta_prime(const DualMap &dual, const SpecialForm &sf, const TorsionData &td, const Theta &theta,
                  const RatMatrix &f11, CertificateLog *log = nullptr);

/// g' from C' = A^{-1} Phi, D' = A^{-1} - C' theta, A' = A^t + theta' C',
/// B' = theta' A^{-1} - A' theta, checked integral, in SO(n, n | Z), mapping
/// theta to theta', and equal to the closed-form blocks.
GPrimeData build_gprime(const SpecialForm &sf, const TorsionData &td, const Theta &theta, const Theta &theta_prime,
                        const RatMatrix &f11, CertificateLog *log = nullptr);

/// A_script == -Ttilde^{-1} Stilde. Throws InternalMismatch.
void check_dual_map(const EmbeddingMap &tmap, const DualMap &dual, const RatMatrix &a_script,
                    CertificateLog *log = nullptr);

/// g = mu(N) rho(Atilde) g'. Throws CtildeNonzero, NotSkew, ReassemblyMismatch.
Decomposition decompose(const GroupElement &g, const GroupElement &gprime, CertificateLog *log = nullptr);

/// Builds every map for a g already in special form and theta with g theta
/// defined. Throws Undefined when theta11 - Z is singular. When `trace` is
/// given, certificates are appended to it as they are checked, so a caller
/// still sees the partial log after a throw.
EmbeddingData build_embedding(const GroupElement &g, const Theta &theta, CertificateLog *trace = nullptr);

/// Full reduction: normalize g, build the embedding data for the normalized
/// pair and assemble the chain theta -> g theta. Throws Undefined.
PipelineResult pipeline(const GroupElement &g, const Theta &theta, CertificateLog *trace = nullptr);

/// Names of every certificate a successful pipeline run records, in order.
const std::vector<std::string> &certificate_names();

}  // namespace morita
