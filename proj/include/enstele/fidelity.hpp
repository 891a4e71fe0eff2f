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

// Teleportation fidelity.
//
// Two formulations are kept side by side:
//   trace form   f = Tr(rho_C rho_Bob), with C identified with B through |c_i> -> |b_i>;
//   vector form  f = c.c + c.(T / |Tc| - 1) c, using the unconjugated bilinear
//                product of coefficient 4-vectors and |v| = v_1 + v_4.
// The trace form is authoritative. The two agree for real coefficient vectors
// and can differ once c12 carries a phase; FidelityReport records that.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "enstele/protocol.hpp"

namespace enstele {

/// |trace_form - vector_form| below this counts as agreement.
inline constexpr double kFormAgreement = 1e-9;

struct FidelityReport {
    double trace_form = 0.0;
    double vector_form = 0.0;
    bool agree = false;
    std::string note;
};

FidelityReport compare_forms(double trace_form, double vector_form);

/// Tr(rho_c(c) bob). `bob` must have unit trace; a non-negligible imaginary
/// part (> 1e-12) raises InvalidStateError.
double fidelity_trace(const CoefficientVector &c, const ComplexMatrix &bob);
/// Tr(rho sigma) for two 2x2 statistical operators.
double fidelity_trace(const ComplexMatrix &rho, const ComplexMatrix &sigma);

/// Vector form. Throws AnnihilatedError when Tc has no positive trace.
double fidelity_vector(const CoefficientVector &c, const TransformationMatrix &t);

/// 2 c11 c22 - 2 c12 c21: the uncorrected fidelity after a Bell-1 preparation.
double lazy_fidelity(const CoefficientVector &c);

struct LazyOptimum {
    CoefficientVector argmax;
    double max;
};

/// Grid search over (c11, |c12|) with |c12| <= sqrt(c11 c22), followed by a
/// golden-section refinement in c11. Requires grid_resolution >= 10.
LazyOptimum maximize_lazy_fidelity(int grid_resolution);

enum class Sampler {
    PureUniform,   ///< uniform on the Bloch sphere (Haar-random pure states)
    MixedUniform,  ///< uniform in the Bloch ball
};

std::string to_string(Sampler s);

/// Sample `index` of the stream identified by `seed`. Every index has its own
/// engine, so samples can be drawn in any order or concurrently.
CoefficientVector sample_coefficients(Sampler sampler, std::uint64_t seed, std::uint64_t index);

struct FidelitySample {
    double trace_form;
    double vector_form;
};

/// Mean and standard error of both fidelity forms.
struct FidelityAverage {
    std::size_t n = 0;
    double mean = 0.0;
    double std_error = 0.0;
    double vector_mean = 0.0;
    double vector_std_error = 0.0;
};

/// Reduces samples in index order.
FidelityAverage summarize(const std::vector<FidelitySample> &samples);

/// Message used for sampled sessions: the matching two-bit message for a
/// corrected Bell preparation, a ping for an uncorrected one, nothing for a tensor.
ClassicalMessage default_message(const Preparation &prep, bool bob_acts);

/// One Monte-Carlo session: draws sample `index` and runs the protocol.
FidelitySample evaluate_sample(const Preparation &prep, bool bob_acts, Sampler sampler, std::uint64_t seed,
                               std::uint64_t index);

/// Monte-Carlo average over `n` >= 100 sampled inputs. Deterministic for a
/// fixed (seed, n) regardless of thread count.
FidelityAverage average_fidelity(const Preparation &prep, bool bob_acts, Sampler sampler, std::size_t n,
                                 std::uint64_t seed);

/// Grid over (c11, |c12| / sqrt(c11 c22), arg c12):
///   c11 = i / (resolution - 1), fraction = j / (resolution - 1),
///   arg = 2 pi k / phases, with k fastest. size() = resolution^2 * phases.
struct SweepGrid {
    int resolution = 101;
    int phases = 4;

    std::size_t size() const;
    void validate() const;
};

struct SweepRow {
    double c11;
    double c12_abs;
    double c12_arg;
    CoefficientVector c;
    double lazy;
    FidelityReport fidelity;
};

SweepRow evaluate_sweep_point(const SweepGrid &grid, std::size_t index, const Preparation &prep, bool bob_acts);

}  // namespace enstele
