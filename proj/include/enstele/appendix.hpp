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

// Two state-update conventions for Alice's preparation:
//   ansatz    Tr_CA((P (x) 1) rho) / Tr(...)
//   sandwich  Tr_CA((P (x) 1) rho (P (x) 1)) / Tr_total((P (x) 1) rho (P (x) 1))
// For P^2 = lambda P the sandwich numerator is exactly lambda times the
// ansatz numerator, so the normalized results coincide.

#pragma once

#include "enstele/protocol.hpp"

namespace enstele {

struct ConventionResult {
    ComplexMatrix ansatz;
    ComplexMatrix sandwich;
    double max_abs_diff = 0.0;
    /// Traces before normalization.
    double ansatz_trace = 0.0;
    double sandwich_trace = 0.0;
    /// sandwich_trace / ansatz_trace: 1 for projectors, 2 for p_aut().
    double prenormalization_factor = 0.0;
    /// max |N_sandwich - factor * N_ansatz| over the unnormalized numerators.
    double numerator_residual = 0.0;
};

/// Tr_CA((P (x) 1) rho_total (P (x) 1)), unnormalized.
ComplexMatrix sandwich_numerator(const PreparationTensor &u, const CoefficientVector &c);

/// Sandwich convention, normalized by the total trace. Throws AnnihilatedError
/// when that trace vanishes.
ComplexMatrix prepare_sandwich(const PreparationTensor &u, const CoefficientVector &c);

ConventionResult compare_conventions(const PreparationTensor &u, const CoefficientVector &c);

}  // namespace enstele
