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

#include "morita/torus_group.hpp"

namespace morita {

/// g whose C block is [[C11, 0], [C21, 0]] (2p leading columns of full
/// rank) and whose D block starts with -[C11; C21] * Z for a unique rational
/// skew Z.
struct SpecialForm {
    std::size_t n = 0;
    std::size_t p = 0;
    RatMatrix Z;    // 2p x 2p
    IntMatrix C11;  // 2p x 2p
    IntMatrix C21;  // q x 2p
    IntMatrix D12;  // 2p x q
    IntMatrix D22;  // q x q

    std::size_t q() const {
        return n - 2 * p;
    }
    /// C and D reassembled from the blocks.
    IntMatrix C() const;
    RatMatrix D() const;
};

/// Throws NotSpecialForm (interior zero column of C, rank-deficient leading
/// block, inconsistent D, non-skew Z) or OddRank.
SpecialForm detect_special_form(const GroupElement &g);

/// Z recomputed with the pivot rows searched in reverse order; equal to
/// sf.Z whenever the leading block of C has full column rank.
RatMatrix resolve_z_reversed(const GroupElement &g, std::size_t p);

/// R0 in GL(n, Z) such that g * rho(R0) is in special form. Throws OddRank.
IntMatrix normalize_right(const GroupElement &g);

struct DomainCheck {
    bool defined = false;
    /// (theta11 - Z)^{-1}; empty when undefined or p = 0.
    RatMatrix F11;
};

/// C theta + D is invertible iff theta11 - Z is. When defined, the full
/// identity (C theta + D)^{-1} C = [[F11, 0], [0, 0]] is verified exactly
/// (InternalMismatch otherwise).
DomainCheck domain_check(const SpecialForm &sf, const Theta &theta);

}  // namespace morita
