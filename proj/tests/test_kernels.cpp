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
#include "doctest.h"
#include "enstele/kernels.hpp"

using namespace enstele;

namespace {

bool same(const FidelitySample &a, const FidelitySample &b) {
    return a.trace_form == b.trace_form && a.vector_form == b.vector_form;
}

bool same(const SweepRow &a, const SweepRow &b) {
    return a.c11 == b.c11 && a.c12_abs == b.c12_abs && a.c12_arg == b.c12_arg && a.c == b.c && a.lazy == b.lazy &&
           a.fidelity.trace_form == b.fidelity.trace_form && a.fidelity.vector_form == b.fidelity.vector_form &&
           a.fidelity.agree == b.fidelity.agree && a.fidelity.note == b.fidelity.note;
}

bool same(const ConventionResult &a, const ConventionResult &b) {
    return a.ansatz == b.ansatz && a.sandwich == b.sandwich && a.max_abs_diff == b.max_abs_diff &&
           a.ansatz_trace == b.ansatz_trace && a.sandwich_trace == b.sandwich_trace &&
           a.prenormalization_factor == b.prenormalization_factor && a.numerator_residual == b.numerator_residual;
}

template <typename T>
bool all_same(const std::vector<T> &a, const std::vector<T> &b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!same(a[i], b[i])) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("parallel fidelity samples equal the serial reference bit for bit") {
    for (Sampler s : {Sampler::PureUniform, Sampler::MixedUniform}) {
        for (const Preparation &prep : {Preparation{BellIndex(1)}, Preparation{BellIndex(4)}, Preparation{p_aut()}}) {
            for (bool bob : {false, true}) {
                const auto a = serial::fidelity_samples(prep, bob, s, 500, 17);
                const auto b = parallel::fidelity_samples(prep, bob, s, 500, 17);
                CHECK(a.size() == 500);
                CHECK(all_same(a, b));
                for (std::size_t k = 0; k < a.size(); k += 97) {
                    CHECK(same(a[k], evaluate_sample(prep, bob, s, 17, k)));
                }
            }
        }
    }
}

TEST_CASE("parallel sweep equals the serial reference bit for bit") {
    const SweepGrid grid{21, 3};
    for (bool bob : {false, true}) {
        const auto a = serial::sweep_rows(grid, BellIndex(2), bob);
        const auto b = parallel::sweep_rows(grid, BellIndex(2), bob);
        CHECK(a.size() == grid.size());
        CHECK(all_same(a, b));
    }
}

TEST_CASE("parallel convention batch equals the serial reference bit for bit") {
    for (const auto &u : {preparation_from_bell(BellIndex(3)), p_aut()}) {
        const auto a = serial::convention_batch(u, Sampler::MixedUniform, 300, 5);
        const auto b = parallel::convention_batch(u, Sampler::MixedUniform, 300, 5);
        CHECK(all_same(a, b));
    }
}

TEST_CASE("kernel errors reach the caller") {
    PreparationTensor::Entries e{};
    e[PreparationTensor::index(1, 1, 1, 1)] = 1.0;
    const Preparation singular = PreparationTensor::normalized(e);
    const SweepGrid grid{5, 2};
    // Grid point 0 has c11 = 0, which this preparation annihilates before Bob acts.
    CHECK_THROWS_AS(serial::sweep_rows(grid, singular, true), AnnihilatedError);
    CHECK_THROWS_AS(parallel::sweep_rows(grid, singular, true), AnnihilatedError);
    CHECK_THROWS_AS(parallel::sweep_rows(SweepGrid{1, 1}, BellIndex(1), false), std::invalid_argument);
}

TEST_CASE("empty batches") {
    CHECK(parallel::fidelity_samples(BellIndex(1), false, Sampler::PureUniform, 0, 1).empty());
    CHECK(parallel::max_threads() >= 1);
}
