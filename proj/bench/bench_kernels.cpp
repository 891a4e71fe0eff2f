// Copyright 2026 The enstele Authors
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
// Serial reference against the OpenMP kernels on the same workloads.

#include <benchmark/benchmark.h>

#include "enstele/kernels.hpp"

namespace {

using namespace enstele;

constexpr std::uint64_t kSeed = 20260116;

void BM_FidelitySamplesSerial(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(serial::fidelity_samples(BellIndex(1), true, Sampler::PureUniform, n, kSeed));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FidelitySamplesParallel(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(parallel::fidelity_samples(BellIndex(1), true, Sampler::PureUniform, n, kSeed));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.counters["threads"] = parallel::max_threads();
}

void BM_SweepSerial(benchmark::State &state) {
    const SweepGrid grid{static_cast<int>(state.range(0)), 4};
    for (auto _ : state) {
        benchmark::DoNotOptimize(serial::sweep_rows(grid, BellIndex(1), false));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}

void BM_SweepParallel(benchmark::State &state) {
    const SweepGrid grid{static_cast<int>(state.range(0)), 4};
    for (auto _ : state) {
        benchmark::DoNotOptimize(parallel::sweep_rows(grid, BellIndex(1), false));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
    state.counters["threads"] = parallel::max_threads();
}

void BM_ConventionSerial(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto u = p_aut();
    for (auto _ : state) {
        benchmark::DoNotOptimize(serial::convention_batch(u, Sampler::MixedUniform, n, kSeed));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ConventionParallel(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto u = p_aut();
    for (auto _ : state) {
        benchmark::DoNotOptimize(parallel::convention_batch(u, Sampler::MixedUniform, n, kSeed));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.counters["threads"] = parallel::max_threads();
}

}  // namespace

BENCHMARK(BM_FidelitySamplesSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FidelitySamplesParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConventionSerial)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConventionParallel)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
