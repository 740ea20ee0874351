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
#include <vector>

#include "morita/embedding.hpp"

namespace morita {

struct CampaignConfig {
    std::size_t n = 2;
    std::uint64_t seed = 0;
    std::size_t trials = 50;
    std::size_t max_word_length = 8;
    std::size_t theta_retries = 20;
    std::size_t max_threads = 0;  // 0: hardware concurrency
};

enum class TrialOutcome { Passed, Failed, Undefined };

struct TrialResult {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::size_t word_length = 0;
    TrialOutcome outcome = TrialOutcome::Undefined;
    std::size_t p = 0, q = 0, k = 0;
    std::optional<PipelineResult> result;  // present when passed
    std::vector<Certificate> certificates;
    std::string error;  // error code name and message on failure
};

struct CampaignReport {
    CampaignConfig config;
    std::vector<TrialResult> trials;  // sorted by index

    std::size_t count(TrialOutcome outcome) const;
};

/// Per-trial seed derived from (seed, n, index) by splitmix64.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t n, std::size_t index);

/// One trial: g is a random generator word of length in [1, max_word_length],
/// theta is redrawn up to `theta_retries` times until g theta is defined.
TrialResult run_trial(const CampaignConfig &config, std::size_t index);

/// Trials run concurrently; the report is independent of scheduling.
CampaignReport run_campaign(const CampaignConfig &config);

}  // namespace morita
