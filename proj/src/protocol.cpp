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

#include "enstele/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace enstele {

namespace {

constexpr double kComponentTolerance = 1e-12;

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(17);
    out << x;
    return out.str();
}

/// C_kl (x) A_mn (x) B_pq on the (C, A, B) space, 1-based indices.
ComplexMatrix cab(int k, int l, int m, int n, int p, int q) {
    return tensor(tensor(MatrixUnit{Factor::C, k, l}.matrix(), MatrixUnit{Factor::A, m, n}.matrix()),
                  MatrixUnit{Factor::B, p, q}.matrix());
}

ComplexMatrix b_unit(int i, int j) { return MatrixUnit{Factor::B, i, j}.matrix(); }

}  // namespace

// --- CoefficientVector -----------------------------------------------------

CoefficientVector CoefficientVector::make(double c11, Complex c12) {
    return from_components(c11, c12, std::conj(c12), 1.0 - c11);
}

CoefficientVector CoefficientVector::from_components(Complex c11, Complex c12, Complex c21, Complex c22) {
    for (const Complex &z : {c11, c12, c21, c22}) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw InvalidStateError("coefficient vector: non-finite component");
        }
    }
    if (std::abs(c11.imag()) > kComponentTolerance || std::abs(c22.imag()) > kComponentTolerance ||
        std::abs(c21 - std::conj(c12)) > kComponentTolerance) {
        throw InvalidStateError("coefficient vector violates Hermiticity (c11, c22 real and c21 = conj(c12))");
    }
    if (std::abs(c11.real() + c22.real() - 1.0) > kComponentTolerance) {
        throw InvalidStateError("coefficient vector violates the trace condition c11 + c22 = 1 (sum is " +
                                fmt(c11.real() + c22.real()) + ")");
    }
    if (c11.real() < 0.0 || c22.real() < 0.0) {
        throw InvalidStateError("coefficient vector violates nonnegativity c11 >= 0, c22 >= 0");
    }
    const double a = c11.real();
    const double product = a * (1.0 - a);
    if (std::norm(c12) > product + kPositivitySlack) {
        throw InvalidStateError("coefficient vector violates positivity |c12|^2 <= c11 c22 (" + fmt(std::norm(c12)) +
                                " > " + fmt(product) + ")");
    }
    return CoefficientVector(a, c12);
}

CoefficientVector CoefficientVector::from_bloch(double x, double y, double z) {
    const double r2 = x * x + y * y + z * z;
    if (!(r2 <= 1.0 + 1e-12)) {
        throw InvalidStateError("Bloch vector outside the unit ball");
    }
    const double c11 = std::clamp(0.5 * (1.0 + z), 0.0, 1.0);
    Complex c12(0.5 * x, -0.5 * y);
    // Rounding can push a pure state a hair outside the positivity bound.
    const double bound = c11 * (1.0 - c11);
    if (std::norm(c12) > bound && bound > 0.0) {
        c12 *= std::sqrt(bound / std::norm(c12));
    } else if (bound == 0.0) {
        c12 = 0.0;
    }
    return make(c11, c12);
}

bool CoefficientVector::is_pure(double tolerance) const { return std::abs(std::norm(c12_) - c11_ * c22()) <= tolerance; }

// --- PreparationTensor -------------------------------------------------------

std::size_t PreparationTensor::index(int k, int l, int m, int n) {
    for (int v : {k, l, m, n}) {
        if (v < 1 || v > 2) {
            throw std::out_of_range("preparation tensor indices must be 1 or 2");
        }
    }
    const int row = 2 * (k - 1) + (m - 1);
    const int col = 2 * (l - 1) + (n - 1);
    return static_cast<std::size_t>(4 * row + col);
}

PreparationTensor PreparationTensor::normalized(const Entries &u) {
    PreparationTensor p(u, true);
    for (int k = 1; k <= 2; ++k) {
        for (int m = 1; m <= 2; ++m) {
            const Complex d = p.u(k, k, m, m);
            if (std::abs(d.imag()) > kComponentTolerance || d.real() < -kComponentTolerance) {
                throw InvalidStateError("preparation tensor: diagonal u_kkmm must be real and nonnegative");
            }
        }
    }
    if (std::abs(p.diagonal_sum() - 1.0) > kComponentTolerance) {
        throw InvalidStateError("preparation tensor: sum of u_kkmm must be 1 (got " + fmt(p.diagonal_sum().real()) +
                                ")");
    }
    return p;
}

PreparationTensor PreparationTensor::normalization_waived(const Entries &u) { return PreparationTensor(u, false); }

PreparationTensor PreparationTensor::from_operator(const ComplexMatrix &p_on_ca, bool enforce_normalization) {
    if (p_on_ca.dim() != 4) {
        throw DimensionError("preparation operator must be 4x4 on C(x)A");
    }
    Entries u{};
    for (std::size_t i = 0; i < 16; ++i) {
        u[i] = p_on_ca.entries()[i];
    }
    return enforce_normalization ? normalized(u) : normalization_waived(u);
}

Complex PreparationTensor::diagonal_sum() const {
    Complex s{};
    for (int k = 1; k <= 2; ++k) {
        for (int m = 1; m <= 2; ++m) {
            s += u(k, k, m, m);
        }
    }
    return s;
}

ComplexMatrix PreparationTensor::matrix() const {
    return ComplexMatrix(4, std::vector<Complex>(u_.begin(), u_.end()));
}

// --- coordinates -------------------------------------------------------------

Vector4 TransformationMatrix::apply(const Vector4 &v) const {
    Vector4 out{};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            out[r] += t(r, c) * v[c];
        }
    }
    return out;
}

Complex trace_norm(const Vector4 &v) { return v[0] + v[3]; }

Vector4 to_coordinates(const ComplexMatrix &m2) {
    if (m2.dim() != 2) {
        throw DimensionError("to_coordinates expects a 2x2 matrix");
    }
    return {m2(0, 0), m2(0, 1), m2(1, 0), m2(1, 1)};
}

ComplexMatrix from_coordinates(const Vector4 &v) { return ComplexMatrix(2, {v[0], v[1], v[2], v[3]}); }

// --- states ------------------------------------------------------------------

ComplexMatrix rho_c(const CoefficientVector &c) { return from_coordinates(c.as_vector()); }

ComplexMatrix rho_total(const CoefficientVector &c) { return tensor(rho_c(c), bell_rho(BellIndex(4)).matrix); }

ComplexMatrix TotalDecomposition::sum() const {
    ComplexMatrix s = ComplexMatrix::zero(8);
    for (const auto &t : primed_terms) {
        s += t;
    }
    for (const auto &f : residuals) {
        s += f;
    }
    return s;
}

TotalDecomposition decompose_total(const CoefficientVector &c) {
    const Complex c11 = c.c11();
    const Complex c12 = c.c12();
    const Complex c21 = c.c21();
    const Complex c22 = c.c22();

    TotalDecomposition d;
    d.b_factors[0] = c11 * b_unit(2, 2) - c12 * b_unit(2, 1) - c21 * b_unit(1, 2) + c22 * b_unit(1, 1);
    d.b_factors[1] = c11 * b_unit(2, 2) + c12 * b_unit(2, 1) + c21 * b_unit(1, 2) + c22 * b_unit(1, 1);
    d.b_factors[2] = c11 * b_unit(1, 1) - c12 * b_unit(1, 2) - c21 * b_unit(2, 1) + c22 * b_unit(2, 2);
    d.b_factors[3] = c11 * b_unit(1, 1) + c12 * b_unit(1, 2) + c21 * b_unit(2, 1) + c22 * b_unit(2, 2);
    for (int i = 0; i < 4; ++i) {
        d.primed_terms[i] = tensor(bell_rho(BellIndex(i + 1), Placement::CA).matrix, d.b_factors[i]);
    }

    // Residuals: coefficient * C_kl (x) A_mn (x) B_pq.
    d.residuals[0] = -1.0 * (c22 * cab(1, 1, 1, 1, 1, 1) + c11 * cab(1, 1, 1, 2, 2, 1) + c11 * cab(1, 1, 2, 1, 1, 2) +
                             c22 * cab(1, 1, 2, 2, 2, 2));
    d.residuals[1] = c12 * cab(1, 2, 1, 1, 2, 2) + c21 * cab(1, 2, 1, 2, 1, 2) + c21 * cab(1, 2, 2, 1, 2, 1) +
                     c12 * cab(1, 2, 2, 2, 1, 1);
    d.residuals[2] = c21 * cab(2, 1, 1, 1, 2, 2) + c12 * cab(2, 1, 1, 2, 1, 2) + c12 * cab(2, 1, 2, 1, 2, 1) +
                     c21 * cab(2, 1, 2, 2, 1, 1);
    d.residuals[3] = -1.0 * (c11 * cab(2, 2, 1, 1, 1, 1) + c22 * cab(2, 2, 1, 2, 2, 1) + c22 * cab(2, 2, 2, 1, 1, 2) +
                             c11 * cab(2, 2, 2, 2, 2, 2));
    return d;
}

// --- preparations --------------------------------------------------------------

PreparationTensor preparation_from_bell(BellIndex i) {
    return PreparationTensor::from_operator(bell_rho(i, Placement::CA).matrix, true);
}

PreparationTensor p_aut() {
    PreparationTensor::Entries u{};
    u[PreparationTensor::index(1, 1, 2, 2)] = 1.0;
    u[PreparationTensor::index(2, 1, 1, 2)] = -1.0;
    u[PreparationTensor::index(1, 2, 2, 1)] = -1.0;
    u[PreparationTensor::index(2, 2, 1, 1)] = 1.0;
    return PreparationTensor::normalization_waived(u);
}

ComplexMatrix alice_prepare(const PreparationTensor &u, const CoefficientVector &c) {
    const SubsystemLayout total = SubsystemLayout::total();
    const ComplexMatrix p = embed(u.matrix(), layout_of(Placement::CA), total);
    return partial_trace(p * rho_total(c), total, {Factor::C, Factor::A});
}

ComplexMatrix renormalize(const ComplexMatrix &m) {
    const Complex tr = trace(m);
    if (std::abs(tr.imag()) > kComponentTolerance * std::max(1.0, std::abs(tr.real()))) {
        throw InvalidStateError("renormalize: trace is not real (imaginary part " + fmt(tr.imag()) + ")");
    }
    if (tr.real() <= kAnnihilationThreshold) {
        throw AnnihilatedError("preparation annihilated the ensemble (trace " + fmt(tr.real()) + ")");
    }
    return m / tr.real();
}

TransformationMatrix transformation_matrix(const PreparationTensor &u) {
    // Row r holds the B-coordinate r of 2 * Tr_CA((P (x) 1) rho_total);
    // column order (c11, c12, c21, c22) selects u_{i p ..} with c_pi.
    const int cols[4][2] = {{1, 1}, {2, 1}, {1, 2}, {2, 2}};  // (i, p) for c11, c12, c21, c22
    const int a_idx[4][2] = {{2, 2}, {1, 2}, {2, 1}, {1, 1}};  // A indices feeding B11, B12, B21, B22
    const double sign[4] = {1.0, -1.0, -1.0, 1.0};
    return TransformationMatrix{ComplexMatrix::from_function(4, [&](std::size_t r, std::size_t col) {
        return sign[r] * u.u(cols[col][0], cols[col][1], a_idx[r][0], a_idx[r][1]);
    })};
}

ComplexMatrix correction_unitary(BellIndex i) {
    const ComplexMatrix s1 = pauli(Pauli::Sigma1);
    const ComplexMatrix s3 = pauli(Pauli::Sigma3);
    switch (i.value()) {
        case 1:
            return s1 * s3;
        case 2:
            return s1;
        case 3:
            return s3;
        default:
            return ComplexMatrix::identity(2);
    }
}

ComplexMatrix bob_correct(BellIndex i, const ComplexMatrix &m) {
    if (m.dim() != 2) {
        throw DimensionError("bob_correct expects a 2x2 operator");
    }
    const double asym = max_hermitian_asymmetry(m);
    if (asym > tol::kHermitian) {
        throw InvalidStateError("bob_correct: input is not Hermitian (max asymmetry " + fmt(asym) + ")");
    }
    if (std::abs(trace(m) - 1.0) > tol::kHermitian) {
        throw InvalidStateError("bob_correct: input must have trace 1 (got " + fmt(trace(m).real()) + ")");
    }
    const ComplexMatrix v = correction_unitary(i);
    return v * m * adjoint(v);
}

ComplexMatrix conjugation_map(const ComplexMatrix &v) {
    // Column j is the image of the j-th matrix unit.
    std::array<Vector4, 4> images;
    for (int j = 0; j < 4; ++j) {
        const ComplexMatrix e = b_unit(j / 2 + 1, j % 2 + 1);
        images[j] = to_coordinates(v * e * adjoint(v));
    }
    return ComplexMatrix::from_function(4, [&](std::size_t r, std::size_t c) { return images[c][r]; });
}

// --- messages and preparations --------------------------------------------------

int bits_sent(const ClassicalMessage &message) {
    if (std::holds_alternative<TwoBits>(message)) {
        return 2;
    }
    return std::holds_alternative<OneBitPing>(message) ? 1 : 0;
}

std::string to_string(const ClassicalMessage &message) {
    if (const auto *two = std::get_if<TwoBits>(&message)) {
        return "twobits(" + std::to_string(two->index.value()) + ")";
    }
    return std::holds_alternative<OneBitPing>(message) ? "ping" : "preagreed";
}

PreparationTensor tensor_of(const Preparation &prep) {
    if (const auto *i = std::get_if<BellIndex>(&prep)) {
        return preparation_from_bell(*i);
    }
    return std::get<PreparationTensor>(prep);
}

std::string to_string(const Preparation &prep) {
    if (const auto *i = std::get_if<BellIndex>(&prep)) {
        return "bell" + std::to_string(i->value());
    }
    return std::get<PreparationTensor>(prep) == p_aut() ? "paut" : "custom";
}

Preparation parse_preparation(const std::string &name) {
    if (name == "paut") {
        return p_aut();
    }
    if (name.size() == 5 && name.starts_with("bell") && name[4] >= '1' && name[4] <= '4') {
        return BellIndex(name[4] - '0');
    }
    throw std::invalid_argument("unknown preparation '" + name + "' (expected bell1..bell4 or paut)");
}

}  // namespace enstele
