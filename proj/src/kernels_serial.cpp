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

#include "enstele/kernels.hpp"

namespace enstele::serial {

std::vector<FidelitySample> fidelity_samples(const Preparation &prep, bool bob_acts, Sampler sampler, std::size_t n,
                                             std::uint64_t seed) {
    std::vector<FidelitySample> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(evaluate_sample(prep, bob_acts, sampler, seed, i));
    }
    return out;
}

std::vector<SweepRow> sweep_rows(const SweepGrid &grid, const Preparation &prep, bool bob_acts) {
    grid.validate();
    std::vector<SweepRow> out;
    out.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.push_back(evaluate_sweep_point(grid, i, prep, bob_acts));
    }
    return out;
}

std::vector<ConventionResult> convention_batch(const PreparationTensor &u, Sampler sampler, std::size_t n,
                                               std::uint64_t seed) {
    std::vector<ConventionResult> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(compare_conventions(u, sample_coefficients(sampler, seed, i)));
    }
    return out;
}

}  // namespace enstele::serial
