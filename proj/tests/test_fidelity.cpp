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
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "enstele/fidelity.hpp"
#include "enstele/kernels.hpp"
#include "enstele/session.hpp"
#include "oracle.hpp"

using namespace enstele;

namespace {

const TransformationMatrix &bell1_t() {
    static const TransformationMatrix t = transformation_matrix(preparation_from_bell(BellIndex(1)));
    return t;
}

PreparationTensor singular_tensor() {
    PreparationTensor::Entries e{};
    e[PreparationTensor::index(1, 1, 1, 1)] = 1.0;
    return PreparationTensor::normalized(e);
}

}  // namespace

TEST_CASE("trace-form fidelity") {
    oracle::Rng rng(41);
    for (int rep = 0; rep < 50; ++rep) {
        const auto pure = rng.pure_coefficients();
        CHECK(std::abs(fidelity_trace(pure, rho_c(pure)) - 1.0) < 1e-12);
        const auto mixed = rng.coefficients();
        const auto rho = rho_c(mixed);
        CHECK(std::abs(fidelity_trace(mixed, rho) - trace(rho * rho).real()) < 1e-15);
    }
    CHECK_THROWS_AS(fidelity_trace(CoefficientVector::make(0.5, 0.0), ComplexMatrix::identity(2)), InvalidStateError);
    const auto skew = ComplexMatrix::from_rows({{0.5, Complex(0.0, 0.4)}, {0.0, 0.5}});
    CHECK_THROWS_AS(fidelity_trace(CoefficientVector::make(0.5, 0.5), skew), InvalidStateError);
    CHECK_THROWS_AS(fidelity_trace(ComplexMatrix::identity(4), ComplexMatrix::identity(4)), DimensionError);
}

TEST_CASE("vector-form fidelity") {
    const TransformationMatrix identity{ComplexMatrix::identity(4)};
    CHECK(fidelity_vector(CoefficientVector::make(0.3, std::sqrt(0.21)), identity) == doctest::Approx(1.0));
    CHECK(fidelity_vector(CoefficientVector::make(1.0, 0.0), identity) == 1.0);

    oracle::Rng rng(42);
    for (int rep = 0; rep < 100; ++rep) {
        const auto c = rng.coefficients();
        const double c11 = c.c11();
        const double c22 = c.c22();
        const Complex c12 = c.c12();
        // Bilinear reading: 2 c11 c22 - 2 c12 c21.
        CHECK(std::abs(fidelity_vector(c, bell1_t()) - (2 * c11 * c22 - 2 * std::norm(c12))) < 1e-12);
        CHECK(std::abs(lazy_fidelity(c) - (2 * c11 * c22 - 2 * std::norm(c12))) < 1e-15);
        // The trace form keeps the phase of c12.
        const auto lazy_state = renormalize(alice_prepare(preparation_from_bell(BellIndex(1)), c));
        CHECK(std::abs(fidelity_trace(c, lazy_state) - (2 * c11 * c22 - 2 * (c12 * c12).real())) < 1e-12);

        // With real coefficients the two forms coincide for every Bell preparation.
        const auto real_c = CoefficientVector::make(c11, std::abs(c12));
        for (BellIndex i : BellIndex::all()) {
            const auto u = preparation_from_bell(i);
            const auto state = renormalize(alice_prepare(u, real_c));
            CHECK(std::abs(fidelity_trace(real_c, state) - fidelity_vector(real_c, transformation_matrix(u))) < 1e-12);
        }
    }
    CHECK_THROWS_AS(fidelity_vector(CoefficientVector::make(0.5, 0.0), TransformationMatrix{}), AnnihilatedError);
}

TEST_CASE("form comparison records disagreement") {
    const auto same = compare_forms(0.5, 0.5 + 1e-12);
    CHECK(same.agree);
    CHECK(same.note.empty());
    const auto apart = compare_forms(0.58, 0.22);
    CHECK_FALSE(apart.agree);
    CHECK(apart.note.find("differ") != std::string::npos);
}

TEST_CASE("lazy fidelity vanishes on pure states") {
    oracle::Rng rng(43);
    for (int rep = 0; rep < 1000; ++rep) {
        CHECK(std::abs(lazy_fidelity(rng.pure_coefficients())) < 1e-12);
    }
    CHECK(lazy_fidelity(CoefficientVector::make(0.5, 0.0)) == 0.5);
}

TEST_CASE("lazy fidelity maximum") {
    const auto best = maximize_lazy_fidelity(101);
    CHECK(std::abs(best.max - 0.5) < 1e-6);
    CHECK(std::abs(best.argmax.c11() - 0.5) < 1e-6);
    CHECK(std::abs(best.argmax.c12()) < 1e-6);
    const auto coarse = maximize_lazy_fidelity(10);
    CHECK(std::abs(coarse.max - 0.5) < 1e-6);
    CHECK_THROWS_AS(maximize_lazy_fidelity(9), std::invalid_argument);

    // Independent check: a fine scan never beats 1/2.
    for (int i = 0; i <= 200; ++i) {
        const double c11 = i / 200.0;
        for (int j = 0; j <= 20; ++j) {
            const double r = j / 20.0 * std::sqrt(c11 * (1 - c11));
            CHECK(lazy_fidelity(CoefficientVector::make(c11, r)) <= 0.5 + 1e-15);
        }
    }
}

TEST_CASE("samplers are deterministic per index and land in the right set") {
    for (Sampler s : {Sampler::PureUniform, Sampler::MixedUniform}) {
        for (std::uint64_t k = 0; k < 200; ++k) {
            const auto a = sample_coefficients(s, 7, k);
            CHECK(a == sample_coefficients(s, 7, k));
            CHECK_FALSE(a == sample_coefficients(s, 8, k));
            if (s == Sampler::PureUniform) {
                CHECK(a.is_pure());
            }
        }
    }
    CHECK(to_string(Sampler::PureUniform) == "pure_uniform");
    CHECK(to_string(Sampler::MixedUniform) == "mixed_uniform");
}

TEST_CASE("pure sampler is uniform on the sphere") {
    constexpr int n = 20000;
    double z = 0.0;
    double z2 = 0.0;
    double x = 0.0;
    for (int k = 0; k < n; ++k) {
        const auto c = sample_coefficients(Sampler::PureUniform, 99, static_cast<std::uint64_t>(k));
        const double bz = 2 * c.c11() - 1;
        z += bz;
        z2 += bz * bz;
        x += 2 * c.c12().real();
    }
    // Var(z) = 1/3 and Var(z^2) = 4/45 on the sphere.
    CHECK(std::abs(z / n) < 5 * std::sqrt(1.0 / 3 / n));
    CHECK(std::abs(x / n) < 5 * std::sqrt(1.0 / 3 / n));
    CHECK(std::abs(z2 / n - 1.0 / 3) < 5 * std::sqrt(4.0 / 45 / n));
}

TEST_CASE("mixed sampler is uniform in the ball") {
    constexpr int n = 20000;
    double r3 = 0.0;
    for (int k = 0; k < n; ++k) {
        const auto c = sample_coefficients(Sampler::MixedUniform, 5, static_cast<std::uint64_t>(k));
        const double bz = 2 * c.c11() - 1;
        const double bx = 2 * c.c12().real();
        const double by = -2 * c.c12().imag();
        r3 += std::pow(bx * bx + by * by + bz * bz, 1.5);
    }
    // r^3 is uniform on [0, 1].
    CHECK(std::abs(r3 / n - 0.5) < 5 * std::sqrt(1.0 / 12 / n));
}

TEST_CASE("average lazy fidelity over Haar inputs") {
    const auto avg = average_fidelity(BellIndex(1), false, Sampler::PureUniform, 20000, 2024);
    // The trace form equals y^2 for a pure input, whose sphere average is 1/3.
    CHECK(std::abs(avg.mean - 1.0 / 3) < 5 * avg.std_error);
    CHECK(std::abs(avg.vector_mean) < 1e-12);
    CHECK(avg.n == 20000);
}

TEST_CASE("average fidelity of the exact protocols") {
    const auto aut = average_fidelity(p_aut(), false, Sampler::MixedUniform, 500, 1);
    // Mixed inputs: the trace form is Tr(rho^2), so only pure inputs reach 1.
    CHECK(aut.mean < 1.0);
    const auto aut_pure = average_fidelity(p_aut(), false, Sampler::PureUniform, 500, 1);
    CHECK(std::abs(aut_pure.mean - 1.0) < 1e-12);
    CHECK(aut_pure.std_error < 1e-12);
    for (BellIndex i : BellIndex::all()) {
        const auto corrected = average_fidelity(i, true, Sampler::PureUniform, 200, 3);
        CHECK(std::abs(corrected.mean - 1.0) < 1e-12);
        // Vector form on the sphere: (1 + z^2 + x^2 - y^2) / 2, mean 2/3.
        CHECK(std::abs(corrected.vector_mean - 2.0 / 3) < 5 * corrected.vector_std_error);
    }
    CHECK_THROWS_AS(average_fidelity(p_aut(), false, Sampler::PureUniform, 99, 1), std::invalid_argument);
}

TEST_CASE("summary statistics") {
    const auto s = summarize({{1.0, 2.0}, {3.0, 2.0}});
    CHECK(s.mean == 2.0);
    CHECK(s.std_error == doctest::Approx(1.0));
    CHECK(s.vector_mean == 2.0);
    CHECK(s.vector_std_error == 0.0);
    CHECK(summarize({}).n == 0);
}

TEST_CASE("default messages") {
    CHECK(default_message(BellIndex(2), true) == ClassicalMessage{TwoBits{BellIndex(2)}});
    CHECK(default_message(BellIndex(2), false) == ClassicalMessage{OneBitPing{}});
    CHECK(default_message(p_aut(), false) == ClassicalMessage{PreAgreed{}});
}

TEST_CASE("sweep grid layout") {
    SweepGrid grid{5, 3};
    CHECK(grid.size() == 75);
    CHECK_THROWS_AS((SweepGrid{1, 3}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SweepGrid{5, 0}.validate()), std::invalid_argument);
    // index = ((i * N) + j) * P + k
    const auto row = evaluate_sweep_point(grid, (2 * 5 + 4) * 3 + 1, BellIndex(1), false);
    CHECK(row.c11 == 0.5);
    CHECK(row.c12_abs == doctest::Approx(0.5));
    CHECK(row.c12_arg == doctest::Approx(2 * std::numbers::pi / 3));
    CHECK(row.c.is_pure());
    CHECK(std::abs(row.lazy) < 1e-12);
    CHECK(row.fidelity.trace_form == doctest::Approx(std::pow(2 * std::abs(row.c.c12().imag()), 2)));
}

TEST_CASE("full corrected protocol reaches fidelity 1") {
    oracle::Rng rng(44);
    for (int rep = 0; rep < 100; ++rep) {
        const auto c = rng.pure_coefficients();
        for (BellIndex i : BellIndex::all()) {
            const auto rec = run_session(c, i, TwoBits{i}, true);
            CHECK(std::abs(rec.fidelity.trace_form - 1.0) < 1e-12);
            CHECK(rec.bits_sent == 2);
            CHECK(std::abs(rec.raw_trace - 0.25) < 1e-12);
        }
    }
}

TEST_CASE("automatic teleportation needs no correction and no bits") {
    oracle::Rng rng(45);
    for (int rep = 0; rep < 100; ++rep) {
        const auto c = rng.coefficients();
        const auto rec = run_session(c, p_aut(), PreAgreed{}, false);
        CHECK(max_abs_diff(rec.bob_state, rho_c(c)) < 1e-12);
        CHECK(rec.bits_sent == 0);
        CHECK(std::abs(rec.raw_trace - 0.5) < 1e-12);
        // The unconjugated vector form reads c.c = c11^2 + c22^2 + 2 Re(c12^2).
        const double bilinear = c.c11() * c.c11() + c.c22() * c.c22() + 2 * (c.c12() * c.c12()).real();
        CHECK(std::abs(rec.fidelity.vector_form - bilinear) < 1e-12);
        CHECK(rec.fidelity.agree == (std::abs(rec.fidelity.trace_form - bilinear) < kFormAgreement));
    }
}

TEST_CASE("session errors") {
    const auto c = CoefficientVector::make(0.5, 0.2);
    CHECK_THROWS_AS(run_session(c, BellIndex(1), TwoBits{BellIndex(2)}, true), ProtocolError);
    CHECK_THROWS_AS(run_session(c, p_aut(), TwoBits{BellIndex(4)}, false), ProtocolError);
    CHECK_THROWS_AS(run_session(c, singular_tensor(), PreAgreed{}, true), ProtocolError);
    CHECK_NOTHROW(run_session(c, BellIndex(3), OneBitPing{}, false));
}

TEST_CASE("a preparation with invertible T is undone by T^-1") {
    oracle::Rng rng(46);
    PreparationTensor::Entries e{};
    e[PreparationTensor::index(1, 1, 1, 1)] = 0.4;
    e[PreparationTensor::index(2, 2, 2, 2)] = 0.1;
    e[PreparationTensor::index(1, 1, 2, 2)] = 0.3;
    e[PreparationTensor::index(2, 2, 1, 1)] = 0.2;
    e[PreparationTensor::index(1, 2, 2, 1)] = 0.3;
    e[PreparationTensor::index(2, 1, 1, 2)] = 0.3;
    e[PreparationTensor::index(1, 2, 1, 2)] = 0.1;
    e[PreparationTensor::index(2, 1, 2, 1)] = 0.1;
    const auto u = PreparationTensor::normalized(e);
    REQUIRE_NOTHROW(inverse(transformation_matrix(u).t));
    for (int rep = 0; rep < 50; ++rep) {
        const auto c = rng.coefficients();
        const auto rec = run_session(c, u, PreAgreed{}, true);
        CHECK(max_abs_diff(rec.bob_state, rho_c(c)) < 1e-10);
    }
}

TEST_CASE("sessions are deterministic") {
    oracle::Rng rng(47);
    for (int rep = 0; rep < 20; ++rep) {
        const auto c = rng.coefficients();
        CHECK(run_session(c, BellIndex(3), TwoBits{BellIndex(3)}, true) ==
              run_session(c, BellIndex(3), TwoBits{BellIndex(3)}, true));
    }
}
