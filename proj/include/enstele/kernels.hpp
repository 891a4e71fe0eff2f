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

// Batch kernels over independent samples or grid points.
//
// `serial` is the reference; `parallel` distributes the same per-item work
// with OpenMP. Both write item i to slot i; outputs are bit-identical and any
// reduction happens afterwards in index order.

#pragma once

#include <cstdint>
#include <vector>

#include "enstele/appendix.hpp"
#include "enstele/fidelity.hpp"

namespace enstele {

namespace serial {

std::vector<FidelitySample> fidelity_samples(const Preparation &prep, bool bob_acts, Sampler sampler, std::size_t n,
                                             std::uint64_t seed);

std::vector<SweepRow> sweep_rows(const SweepGrid &grid, const Preparation &prep, bool bob_acts);

/// compare_conventions(u, c_k) for c_k = sample_coefficients(sampler, seed, k), k < n.
std::vector<ConventionResult> convention_batch(const PreparationTensor &u, Sampler sampler, std::size_t n,
                                               std::uint64_t seed);

}  // namespace serial

namespace parallel {

std::vector<FidelitySample> fidelity_samples(const Preparation &prep, bool bob_acts, Sampler sampler, std::size_t n,
                                             std::uint64_t seed);

std::vector<SweepRow> sweep_rows(const SweepGrid &grid, const Preparation &prep, bool bob_acts);

std::vector<ConventionResult> convention_batch(const PreparationTensor &u, Sampler sampler, std::size_t n,
                                               std::uint64_t seed);

/// Threads OpenMP would use; 1 when built without OpenMP.
int max_threads();

}  // namespace parallel

}  // namespace enstele
