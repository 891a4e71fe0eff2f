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

#include <cstdint>
#include <exception>
#include <optional>

#include "enstele/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace enstele::parallel {

namespace {

/// Evaluates f(i) for i < n into slot i. After the loop, the exception of the
/// lowest failing index, if any, is rethrown.
template <typename T, typename F>
std::vector<T> for_each_index(std::size_t n, F &&f) {
    std::vector<std::optional<T>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            slots[i].emplace(f(static_cast<std::size_t>(i)));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    std::vector<T> out;
    out.reserve(n);
    for (auto &s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}

}  // namespace

std::vector<FidelitySample> fidelity_samples(const Preparation &prep, bool bob_acts, Sampler sampler, std::size_t n,
                                             std::uint64_t seed) {
    return for_each_index<FidelitySample>(
        n, [&](std::size_t i) { return evaluate_sample(prep, bob_acts, sampler, seed, i); });
}

std::vector<SweepRow> sweep_rows(const SweepGrid &grid, const Preparation &prep, bool bob_acts) {
    grid.validate();
    return for_each_index<SweepRow>(grid.size(),
                                    [&](std::size_t i) { return evaluate_sweep_point(grid, i, prep, bob_acts); });
}

std::vector<ConventionResult> convention_batch(const PreparationTensor &u, Sampler sampler, std::size_t n,
                                               std::uint64_t seed) {
    return for_each_index<ConventionResult>(
        n, [&](std::size_t i) { return compare_conventions(u, sample_coefficients(sampler, seed, i)); });
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace enstele::parallel
