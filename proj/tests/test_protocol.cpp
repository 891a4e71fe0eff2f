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
#include <string>

#include "doctest.h"
#include "enstele/protocol.hpp"
#include "oracle.hpp"

using namespace enstele;
using oracle::Dense;

namespace {

/// Tr_CA of an 8x8 operator in (C, A, B) order, summed by hand.
Dense trace_out_ca(const Dense &m) {
    Dense out(2);
    for (int b = 0; b < 2; ++b) {
        for (int b2 = 0; b2 < 2; ++b2) {
            for (int ca = 0; ca < 4; ++ca) {
                out(b, b2) += m(2 * ca + b, 2 * ca + b2);
            }
        }
    }
    return out;
}

/// Tr_CA((P (x) 1) rho_total) with rho_total from its 16-term expansion.
Dense prepared_by_hand(const PreparationTensor &u, const CoefficientVector &c) {
    Dense p(4);
    p.a.assign(u.entries().begin(), u.entries().end());
    return trace_out_ca(oracle::mul(oracle::kron(p, oracle::eye(2)), oracle::rho_total_expanded(c)));
}

Dense conjugated(const Dense &v, const Dense &rho) { return oracle::mul(oracle::mul(v, rho), oracle::adj(v)); }

/// X_i: the operator Bob holds after projection i, before correction.
Dense expected_bob(int i, const CoefficientVector &c) {
    const Dense rho = oracle::coefficient_operator(c);
    const Dense s1 = oracle::sigma1();
    const Dense s3 = oracle::sigma3();
    switch (i) {
        case 1:
            return conjugated(oracle::mul(s3, s1), rho);
        case 2:
            return conjugated(s1, rho);
        case 3:
            return conjugated(s3, rho);
        default:
            return rho;
    }
}

PreparationTensor random_tensor(oracle::Rng &rng) {
    const auto m = oracle::to_matrix(rng.matrix(4));
    const auto p = adjoint(m) * m;
    return PreparationTensor::from_operator(p / trace(p), true);
}

std::string error_of(Complex c11, Complex c12, Complex c21, Complex c22) {
    try {
        CoefficientVector::from_components(c11, c12, c21, c22);
    } catch (const InvalidStateError &e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("coefficient vectors name the violated invariant") {
    CHECK(error_of(std::nan(""), 0.0, 0.0, 1.0).find("non-finite") != std::string::npos);
    CHECK(error_of(Complex(0.5, 0.1), 0.0, 0.0, 0.5).find("Hermiticity") != std::string::npos);
    CHECK(error_of(0.5, 0.1, 0.2, 0.5).find("Hermiticity") != std::string::npos);
    CHECK(error_of(0.5, 0.0, 0.0, 0.6).find("trace") != std::string::npos);
    CHECK(error_of(-0.1, 0.0, 0.0, 1.1).find("nonnegativity") != std::string::npos);
    CHECK(error_of(0.5, 0.6, 0.6, 0.5).find("positivity") != std::string::npos);
    CHECK(error_of(0.5, Complex(0.3, 0.5), Complex(0.3, -0.5), 0.5).find("positivity") != std::string::npos);
    CHECK(error_of(0.5, 0.5, 0.5, 0.5).empty());

    const auto c = CoefficientVector::make(0.3, Complex(0.1, -0.2));
    CHECK(c.c21() == Complex(0.1, 0.2));
    CHECK(c.c22() == doctest::Approx(0.7));
    CHECK_FALSE(c.is_pure());
    CHECK(CoefficientVector::make(0.5, 0.5).is_pure());
}

TEST_CASE("Bloch coordinates") {
    CHECK(CoefficientVector::from_bloch(0, 0, 1) == CoefficientVector::make(1.0, 0.0));
    CHECK(CoefficientVector::from_bloch(0, 0, -1) == CoefficientVector::make(0.0, 0.0));
    CHECK(CoefficientVector::from_bloch(1, 0, 0).c12() == Complex(0.5, 0.0));
    CHECK(CoefficientVector::from_bloch(0, 1, 0).c12() == Complex(0.0, -0.5));
    CHECK(CoefficientVector::from_bloch(0.6, 0.0, 0.8).is_pure());
    CHECK_THROWS_AS(CoefficientVector::from_bloch(1, 1, 0), InvalidStateError);
}

TEST_CASE("rho_C is a statistical operator") {
    oracle::Rng rng(21);
    for (int rep = 0; rep < 50; ++rep) {
        const auto c = rng.coefficients();
        CHECK_NOTHROW(check_statistical_operator(rho_c(c)));
        CHECK(oracle::diff(rho_c(c), oracle::coefficient_operator(c)) == 0.0);
    }
}

TEST_CASE("rho_total equals its 16-term expansion") {
    oracle::Rng rng(22);
    for (int rep = 0; rep < 50; ++rep) {
        const auto c = rng.coefficients();
        const auto total = rho_total(c);
        CHECK(oracle::diff(total, oracle::rho_total_expanded(c)) < 1e-15);
        CHECK(oracle::diff(total, oracle::kron(oracle::coefficient_operator(c), oracle::bell_projector(4))) < 1e-15);
        CHECK_NOTHROW(check_statistical_operator(total));
    }
}

TEST_CASE("primed decomposition reconstructs twice rho_total") {
    oracle::Rng rng(23);
    for (int rep = 0; rep < 100; ++rep) {
        const auto c = rng.coefficients();
        const auto d = decompose_total(c);
        CHECK(max_abs_diff(d.sum(), rho_total(c) * Complex(2.0)) < 1e-12);
        for (int i = 0; i < 4; ++i) {
            CHECK(oracle::diff(d.b_factors[i], expected_bob(i + 1, c)) < 1e-15);
        }
    }
}

TEST_CASE("each residual term lives on a single C matrix unit") {
    oracle::Rng rng(24);
    const auto d = decompose_total(rng.coefficients());
    const int units[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    for (int t = 0; t < 4; ++t) {
        for (std::size_t r = 0; r < 8; ++r) {
            for (std::size_t col = 0; col < 8; ++col) {
                const bool inside = static_cast<int>(r / 4) == units[t][0] && static_cast<int>(col / 4) == units[t][1];
                if (!inside) {
                    CHECK(d.residuals[t](r, col) == Complex(0.0));
                }
            }
        }
    }
}

TEST_CASE("projecting the decomposition onto rho'_1 splits into 1/2 X_1 and -1/4 X_1") {
    oracle::Rng rng(25);
    const auto total = SubsystemLayout::total();
    const auto p1 = embed(bell_rho(BellIndex(1), Placement::CA));
    for (int rep = 0; rep < 20; ++rep) {
        const auto c = rng.coefficients();
        const auto d = decompose_total(c);
        ComplexMatrix primed = ComplexMatrix::zero(8);
        ComplexMatrix residual = ComplexMatrix::zero(8);
        for (int i = 0; i < 4; ++i) {
            primed += d.primed_terms[i];
            residual += d.residuals[i];
        }
        const Dense x1 = expected_bob(1, c);
        const auto from_primed = partial_trace(p1 * primed * Complex(0.5), total, {Factor::C, Factor::A});
        const auto from_residual = partial_trace(p1 * residual * Complex(0.5), total, {Factor::C, Factor::A});
        CHECK(oracle::diff(from_primed, oracle::scale(0.5, x1)) < 1e-12);
        CHECK(oracle::diff(from_residual, oracle::scale(-0.25, x1)) < 1e-12);
    }
}

TEST_CASE("alice_prepare matches the hand computation and the closed form") {
    oracle::Rng rng(26);
    for (int rep = 0; rep < 50; ++rep) {
        const auto c = rng.coefficients();
        std::vector<PreparationTensor> preps = {random_tensor(rng), p_aut()};
        for (BellIndex i : BellIndex::all()) {
            preps.push_back(preparation_from_bell(i));
        }
        for (const auto &u : preps) {
            const auto bob = alice_prepare(u, c);
            CHECK(oracle::diff(bob, prepared_by_hand(u, c)) < 1e-14);
            CHECK(oracle::diff(bob, oracle::bob_closed_form(u, c)) < 1e-14);
        }
    }
}

TEST_CASE("Bell preparations leave a quarter of the trace and the conjugated input") {
    oracle::Rng rng(27);
    for (int rep = 0; rep < 100; ++rep) {
        const auto c = rng.coefficients();
        for (BellIndex i : BellIndex::all()) {
            const auto raw = alice_prepare(preparation_from_bell(i), c);
            CHECK(std::abs(trace(raw) - 0.25) < 1e-12);
            CHECK(oracle::diff(renormalize(raw), expected_bob(i.value(), c)) < 1e-12);
        }
    }
}

TEST_CASE("renormalize") {
    CHECK(renormalize(ComplexMatrix::identity(2)) == ComplexMatrix::identity(2) * Complex(0.5));
    CHECK_THROWS_AS(renormalize(ComplexMatrix::zero(2)), AnnihilatedError);
    CHECK_THROWS_AS(renormalize(ComplexMatrix::identity(2) * Complex(-1.0)), AnnihilatedError);
    CHECK_THROWS_AS(renormalize(ComplexMatrix::identity(2) * Complex(0.0, 1.0)), InvalidStateError);

    PreparationTensor::Entries e{};
    e[PreparationTensor::index(1, 1, 1, 1)] = 1.0;
    const auto only_c11 = PreparationTensor::normalized(e);
    CHECK_THROWS_AS(renormalize(alice_prepare(only_c11, CoefficientVector::make(0.0, 0.0))), AnnihilatedError);
    try {
        renormalize(alice_prepare(only_c11, CoefficientVector::make(0.0, 0.0)));
    } catch (const AnnihilatedError &err) {
        CHECK(std::string(err.what()).find("preparation annihilated the ensemble") != std::string::npos);
    }
}

TEST_CASE("preparation tensors") {
    CHECK(PreparationTensor::index(1, 1, 1, 1) == 0);
    CHECK(PreparationTensor::index(1, 2, 1, 1) == 2);
    CHECK(PreparationTensor::index(2, 1, 1, 2) == 9);
    CHECK_THROWS_AS(PreparationTensor::index(3, 1, 1, 1), std::out_of_range);

    PreparationTensor::Entries e{};
    e[PreparationTensor::index(1, 1, 1, 1)] = 0.5;
    CHECK_THROWS_AS(PreparationTensor::normalized(e), InvalidStateError);
    e[PreparationTensor::index(2, 2, 2, 2)] = 0.5;
    CHECK_NOTHROW(PreparationTensor::normalized(e));
    e[PreparationTensor::index(2, 2, 2, 2)] = Complex(0.5, 0.1);
    CHECK_THROWS_AS(PreparationTensor::normalized(e), InvalidStateError);
    e[PreparationTensor::index(1, 1, 1, 1)] = 1.5;
    e[PreparationTensor::index(2, 2, 2, 2)] = -0.5;
    CHECK_THROWS_AS(PreparationTensor::normalized(e), InvalidStateError);
    CHECK_THROWS_AS(PreparationTensor::from_operator(ComplexMatrix::identity(2), false), DimensionError);

    for (BellIndex i : BellIndex::all()) {
        const auto u = preparation_from_bell(i);
        CHECK(u.is_normalized());
        CHECK(u.matrix() == bell_rho(i, Placement::CA).matrix);
    }
}

TEST_CASE("automatic-teleportation operator") {
    const auto u = p_aut();
    CHECK_FALSE(u.is_normalized());
    CHECK(u.diagonal_sum() == Complex(2.0));
    CHECK(u.u(1, 1, 2, 2) == Complex(1.0));
    CHECK(u.u(2, 1, 1, 2) == Complex(-1.0));
    CHECK(u.u(1, 2, 2, 1) == Complex(-1.0));
    CHECK(u.u(2, 2, 1, 1) == Complex(1.0));
    const auto p = u.matrix();
    CHECK(max_abs_diff(p, bell_rho(BellIndex(4), Placement::CA).matrix * Complex(2.0)) < 1e-15);
    CHECK(max_abs_diff(p * p, p * Complex(2.0)) < 1e-15);
    CHECK(adjoint(p) == p);
    CHECK(transformation_matrix(u).t == ComplexMatrix::identity(4));
    CHECK(to_string(Preparation{u}) == "paut");
}

TEST_CASE("transformation matrix") {
    const auto t1 = transformation_matrix(preparation_from_bell(BellIndex(1))).t;
    const auto eq31 = ComplexMatrix::from_rows(
        {{0.0, 0.0, 0.0, 0.5}, {0.0, 0.0, -0.5, 0.0}, {0.0, -0.5, 0.0, 0.0}, {0.5, 0.0, 0.0, 0.0}});
    CHECK(t1 == eq31);

    oracle::Rng rng(28);
    for (int rep = 0; rep < 50; ++rep) {
        const auto u = random_tensor(rng);
        const auto c = rng.coefficients();
        const auto t = transformation_matrix(u);
        CHECK(oracle::diff(t.t, oracle::transformation_rows(u)) == 0.0);
        const Vector4 tc = t.apply(c.as_vector());
        const Vector4 raw = to_coordinates(alice_prepare(u, c));
        for (std::size_t k = 0; k < 4; ++k) {
            CHECK(std::abs(0.5 * tc[k] - raw[k]) < 1e-14);
        }
        CHECK(std::abs(trace_norm(transformation_matrix(preparation_from_bell(BellIndex(1))).apply(c.as_vector())) -
                       0.5) < 1e-12);
    }
}

TEST_CASE("Bob's corrections undo each Bell preparation") {
    oracle::Rng rng(29);
    for (int rep = 0; rep < 100; ++rep) {
        const auto c = rng.coefficients();
        for (BellIndex i : BellIndex::all()) {
            const auto bob = renormalize(alice_prepare(preparation_from_bell(i), c));
            CHECK(max_abs_diff(bob_correct(i, bob), rho_c(c)) < 1e-12);
        }
    }
    for (BellIndex i : BellIndex::all()) {
        const auto v = correction_unitary(i);
        CHECK(max_abs_diff(v * adjoint(v), ComplexMatrix::identity(2)) == 0.0);
    }
    CHECK_THROWS_AS(bob_correct(BellIndex(1), ComplexMatrix::identity(2)), InvalidStateError);
    CHECK_THROWS_AS(bob_correct(BellIndex(1), ComplexMatrix::from_rows({{0.5, 0.3}, {0.0, 0.5}})),
                    InvalidStateError);
    CHECK_THROWS_AS(bob_correct(BellIndex(1), ComplexMatrix::identity(4)), DimensionError);
}

TEST_CASE("conjugation map acts on coordinates") {
    oracle::Rng rng(30);
    for (BellIndex i : BellIndex::all()) {
        const auto v = correction_unitary(i);
        const auto m = oracle::to_matrix(rng.matrix(2));
        const Vector4 mapped = TransformationMatrix{conjugation_map(v)}.apply(to_coordinates(m));
        CHECK(max_abs_diff(from_coordinates(mapped), v * m * adjoint(v)) < 1e-15);
    }
}

TEST_CASE("messages and preparation names") {
    CHECK(bits_sent(TwoBits{BellIndex(3)}) == 2);
    CHECK(bits_sent(OneBitPing{}) == 1);
    CHECK(bits_sent(PreAgreed{}) == 0);
    CHECK(to_string(ClassicalMessage{TwoBits{BellIndex(3)}}) == "twobits(3)");
    CHECK(to_string(ClassicalMessage{OneBitPing{}}) == "ping");
    CHECK(to_string(ClassicalMessage{PreAgreed{}}) == "preagreed");
    for (const std::string name : {"bell1", "bell2", "bell3", "bell4", "paut"}) {
        CHECK(to_string(parse_preparation(name)) == name);
    }
    CHECK_THROWS_AS(parse_preparation("bell5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_preparation("Bell1"), std::invalid_argument);
    oracle::Rng rng(31);
    CHECK(to_string(Preparation{random_tensor(rng)}) == "custom");
}
