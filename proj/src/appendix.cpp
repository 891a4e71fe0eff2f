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

#include "enstele/appendix.hpp"

#include <cmath>

namespace enstele {

namespace {

ComplexMatrix sandwiched_total(const PreparationTensor &u, const CoefficientVector &c) {
    const SubsystemLayout total = SubsystemLayout::total();
    const ComplexMatrix p = embed(u.matrix(), layout_of(Placement::CA), total);
    return p * rho_total(c) * p;
}

}  // namespace

ComplexMatrix sandwich_numerator(const PreparationTensor &u, const CoefficientVector &c) {
    return partial_trace(sandwiched_total(u, c), SubsystemLayout::total(), {Factor::C, Factor::A});
}

ComplexMatrix prepare_sandwich(const PreparationTensor &u, const CoefficientVector &c) {
    const ComplexMatrix full = sandwiched_total(u, c);
    const Complex denominator = trace(full);
    if (std::abs(denominator) <= kAnnihilationThreshold) {
        throw AnnihilatedError("sandwich convention: preparation annihilated the ensemble");
    }
    return partial_trace(full, SubsystemLayout::total(), {Factor::C, Factor::A}) / denominator;
}

ConventionResult compare_conventions(const PreparationTensor &u, const CoefficientVector &c) {
    const ComplexMatrix ansatz_raw = alice_prepare(u, c);
    const ComplexMatrix sandwich_raw = sandwich_numerator(u, c);

    ConventionResult r;
    r.ansatz = renormalize(ansatz_raw);
    r.sandwich = prepare_sandwich(u, c);
    r.max_abs_diff = max_abs_diff(r.ansatz, r.sandwich);
    r.ansatz_trace = trace(ansatz_raw).real();
    r.sandwich_trace = trace(sandwich_raw).real();
    r.prenormalization_factor = r.sandwich_trace / r.ansatz_trace;
    r.numerator_residual = max_abs_diff(sandwich_raw, ansatz_raw * r.prenormalization_factor);
    return r;
}

}  // namespace enstele
