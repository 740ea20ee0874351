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

#include "morita/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

namespace morita {

std::size_t CampaignReport::count(TrialOutcome outcome) const {
    return static_cast<std::size_t>(
        std::count_if(trials.begin(), trials.end(), [&](const TrialResult &t) { return t.outcome == outcome; }));
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t n, std::size_t index) {
    std::uint64_t z = seed ^ (static_cast<std::uint64_t>(n) << 48) ^ static_cast<std::uint64_t>(index);
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

TrialResult run_trial(const CampaignConfig &config, std::size_t index) {
    TrialResult out;
    out.index = index;
    out.seed = trial_seed(config.seed, config.n, index);
    std::mt19937_64 rng(out.seed);
    out.word_length = static_cast<std::size_t>(
        uniform_int(rng, 1, static_cast<std::int64_t>(std::max<std::size_t>(config.max_word_length, 1))));
    GroupElement g = random_element(rng, out.word_length, config.n);

    std::optional<Theta> theta;
    for (std::size_t attempt = 0; attempt <= config.theta_retries && !theta; attempt++) {
        Theta candidate = random_theta(rng, config.n);
        if (act(g, candidate)) {
            theta = candidate;
        }
    }
    if (!theta) {
        out.outcome = TrialOutcome::Undefined;
        return out;
    }

    CertificateLog log;
    try {
        PipelineResult result = pipeline(g, *theta, &log);
        out.p = result.data.sf.p;
        out.q = result.data.sf.q();
        out.k = result.data.td.k();
        out.outcome = result.data.all_passed() ? TrialOutcome::Passed : TrialOutcome::Failed;
        out.result = std::move(result);
    } catch (const MoritaError &e) {
        out.outcome = TrialOutcome::Failed;
        out.error = std::string(error_code_name(e.code())) + ": " + e.what();
    }
    out.certificates = log.entries();
    return out;
}

CampaignReport run_campaign(const CampaignConfig &config) {
    CampaignReport report;
    report.config = config;
    report.trials.resize(config.trials);

    std::size_t threads = config.max_threads ? config.max_threads : std::thread::hardware_concurrency();
    threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(config.trials, 1));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < config.trials; i = next++) {
            report.trials[i] = run_trial(config, i);
        }
    };
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; t++) {
        pool.emplace_back(worker);
    }
    pool.clear();
    return report;
}

}  // namespace morita
