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

#include <benchmark/benchmark.h>

#include <random>

#include "morita/campaign.hpp"
#include "morita/embedding.hpp"
#include "morita/exact_linalg.hpp"
#include "morita/module_sim.hpp"

namespace {

morita::IntMatrix random_int_matrix(std::mt19937_64 &rng, std::size_t rows, std::size_t cols) {
    morita::IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; r++) {
        for (std::size_t c = 0; c < cols; c++) {
            m(r, c) = static_cast<long>(morita::uniform_int(rng, -9, 9));
        }
    }
    return m;
}

void BM_SmithNormalForm(benchmark::State &state) {
    std::mt19937_64 rng(1);
    auto size = static_cast<std::size_t>(state.range(0));
    morita::IntMatrix m = random_int_matrix(rng, size, size);
    for (auto _ : state) {
        benchmark::DoNotOptimize(morita::smith_normal_form(m));
    }
}
BENCHMARK(BM_SmithNormalForm)->DenseRange(2, 8, 2);

void BM_AlternatingNormalForm(benchmark::State &state) {
    std::mt19937_64 rng(2);
    auto size = static_cast<std::size_t>(state.range(0));
    morita::IntMatrix m = random_int_matrix(rng, size, size);
    morita::IntMatrix skew = m - m.transpose();
    for (auto _ : state) {
        benchmark::DoNotOptimize(morita::alternating_normal_form_int(skew));
    }
}
BENCHMARK(BM_AlternatingNormalForm)->DenseRange(2, 8, 2);

void BM_Pipeline(benchmark::State &state) {
    morita::CampaignConfig config;
    config.n = static_cast<std::size_t>(state.range(0));
    config.seed = 11;
    for (auto _ : state) {
        benchmark::DoNotOptimize(morita::run_trial(config, 0));
    }
}
BENCHMARK(BM_Pipeline)->DenseRange(2, 6, 1);

void BM_ModuleRelation(benchmark::State &state) {
    auto g = morita::sigma_flip(2, {0, 1});
    morita::Theta theta(morita::RatMatrix{{0, morita::Rational(1, 3)}, {morita::Rational(-1, 3), 0}});
    auto data = morita::pipeline(g, theta).data;
    auto d = morita::ModuleDescriptor::from_embedding(data);
    for (auto _ : state) {
        benchmark::DoNotOptimize(morita::simulate(d, 5, 100));
    }
}
BENCHMARK(BM_ModuleRelation);

}  // namespace

BENCHMARK_MAIN();
