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
#include <string>
#include <string_view>

#include "morita/torus_group.hpp"

namespace morita {

inline constexpr std::string_view kDocumentVersion = "morita/1";

struct JobOptions {
    std::uint64_t seed = 0;
    std::size_t word_length = 8;
    std::size_t samples = 100;
    double tolerance = 1e-9;
    std::size_t trials = 50;
};

/// A job: g as four integer blocks, an optional theta, and run options.
/// Blocks are only shape-checked here; membership is checked by the caller.
struct JobDocument {
    std::size_t n = 0;
    std::optional<IntMatrix> A, B, C, D;
    std::optional<RatMatrix> theta;
    JobOptions options;

    bool has_group_element() const {
        return A.has_value();
    }
    /// Throws MembershipFailed (wrapping the relation that failed) or
    /// ParseError when g is missing.
    GroupElement group_element() const;
    /// Throws ParseError when theta is missing, NotSkew otherwise invalid.
    Theta theta_value() const;
};

/// Parses a JSON job. Integers may be JSON numbers or decimal strings;
/// theta entries are "p/q" strings (integers also accepted). Throws ParseError.
JobDocument parse_job(std::string_view text);

/// Canonical JSON text; parse_job(serialize_job(d)) == d.
std::string serialize_job(const JobDocument &doc);

bool operator==(const JobOptions &a, const JobOptions &b);
bool operator==(const JobDocument &a, const JobDocument &b);

}  // namespace morita
