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

// Teleportation of a two-level ensemble: the input rho_C on factor C, the shared
// pair in bell_rho(4) on A (x) B, Alice's preparation operator P on C (x) A,
// and the operator Tr_CA((P (x) 1_B) rho_total) left on Bob's side.
//
// Two-by-two operators on one factor are also handled as 4-vectors in the
// matrix-unit basis (E11, E12, E21, E22), i.e. row-major flattening.

#pragma once

#include <array>
#include <string>
#include <variant>

#include "enstele/bell.hpp"
#include "enstele/linalg.hpp"

namespace enstele {

/// Coefficients (c11, c12, c21, c22) of a qubit statistical operator
/// sum c_kl |k><l|. Only valid operators can be constructed:
///   c11 + c22 = 1, c11, c22 >= 0, c21 = conj(c12), |c12|^2 <= c11 c22.
class CoefficientVector {
   public:
    /// Slack on the positivity bound |c12|^2 <= c11 c22.
    static constexpr double kPositivitySlack = 1e-12;

    /// c22 = 1 - c11 and c21 = conj(c12) are derived.
    static CoefficientVector make(double c11, Complex c12);
    /// Checks every invariant on a raw 4-tuple; the error names the one violated.
    static CoefficientVector from_components(Complex c11, Complex c12, Complex c21, Complex c22);
    /// rho = (1 + x s1 + y s2 + z s3)/2 for |(x, y, z)| <= 1.
    static CoefficientVector from_bloch(double x, double y, double z);

    double c11() const noexcept { return c11_; }
    Complex c12() const noexcept { return c12_; }
    Complex c21() const noexcept { return std::conj(c12_); }
    double c22() const noexcept { return 1.0 - c11_; }

    Vector4 as_vector() const noexcept { return {c11_, c12_, c21(), c22()}; }
    /// |c12|^2 == c11 c22 within `tolerance`.
    bool is_pure(double tolerance = 1e-12) const;

    bool operator==(const CoefficientVector &) const = default;

   private:
    CoefficientVector(double c11, Complex c12) : c11_(c11), c12_(c12) {}

    double c11_;
    Complex c12_;
};

/// Coefficients u_klmn of P = sum u_klmn C_kl (x) A_mn, all indices in {1, 2}.
class PreparationTensor {
   public:
    using Entries = std::array<Complex, 16>;

    /// Flat position of u_klmn (1-based indices): equals the row-major entry
    /// of P at row (k, m), column (l, n) in the C (x) A layout.
    static std::size_t index(int k, int l, int m, int n);

    /// Enforces sum_{k,m} u_kkmm = 1 with real, nonnegative u_kkmm.
    static PreparationTensor normalized(const Entries &u);
    /// No trace constraint; the caller acknowledges the operator is not a
    /// normalized preparation (as for the automatic-teleportation operator).
    static PreparationTensor normalization_waived(const Entries &u);

    static PreparationTensor from_operator(const ComplexMatrix &p_on_ca, bool enforce_normalization);

    Complex u(int k, int l, int m, int n) const { return u_[index(k, l, m, n)]; }
    const Entries &entries() const noexcept { return u_; }
    bool is_normalized() const noexcept { return normalized_; }
    /// sum_{k,m} u_kkmm.
    Complex diagonal_sum() const;
    /// The operator P on C (x) A.
    ComplexMatrix matrix() const;

    bool operator==(const PreparationTensor &) const = default;

   private:
    PreparationTensor(const Entries &u, bool normalized) : u_(u), normalized_(normalized) {}

    Entries u_;
    bool normalized_;
};

/// Linear map from the input coefficient vector to 2 * Bob's raw operator,
/// both in (E11, E12, E21, E22) coordinates.
struct TransformationMatrix {
    ComplexMatrix t = ComplexMatrix::zero(4);

    Vector4 apply(const Vector4 &v) const;
};

/// Sum of components 1 and 4: the trace of the 2x2 operator a 4-vector represents.
Complex trace_norm(const Vector4 &v);
Vector4 to_coordinates(const ComplexMatrix &m2);
ComplexMatrix from_coordinates(const Vector4 &v);

/// rho_C = sum c_kl C_kl.
ComplexMatrix rho_c(const CoefficientVector &c);

/// rho_C (x) bell_rho(4) in the (C, A, B) layout.
ComplexMatrix rho_total(const CoefficientVector &c);

/// 2 rho_total split into the four primed-projector terms and four residuals.
struct TotalDecomposition {
    /// B-side factor multiplying rho'_i, from the explicit c-coefficients.
    std::array<ComplexMatrix, 4> b_factors;
    /// rho'_i (x) b_factors[i] as 8x8 operators on (C, A, B).
    std::array<ComplexMatrix, 4> primed_terms;
    /// F11, F12, F21, F22, each proportional to C_kl on factor C.
    std::array<ComplexMatrix, 4> residuals;

    ComplexMatrix sum() const;
};

TotalDecomposition decompose_total(const CoefficientVector &c);

/// Tensor whose operator equals the primed Bell projector bell_rho(i, CA).
PreparationTensor preparation_from_bell(BellIndex i);

/// The automatic-teleportation operator C11(x)A22 - C21(x)A12 - C12(x)A21 + C22(x)A11
/// (= 2 rho'_4). Its diagonal sum is 2, so normalization is waived.
PreparationTensor p_aut();

/// Tr_CA((P (x) 1_B) rho_total), computed on the full 8x8 space. Not normalized.
ComplexMatrix alice_prepare(const PreparationTensor &u, const CoefficientVector &c);

/// Below this trace a preparation is treated as having annihilated the ensemble.
inline constexpr double kAnnihilationThreshold = 1e-9;

/// m / Tr(m). Throws AnnihilatedError when Tr(m) <= kAnnihilationThreshold and
/// InvalidStateError when the trace is not real.
ComplexMatrix renormalize(const ComplexMatrix &m);

TransformationMatrix transformation_matrix(const PreparationTensor &u);

/// Unitary V_i Bob applies (m -> V m V^dagger) after preparation i:
/// sigma1 sigma3, sigma1, sigma3, identity for i = 1..4.
ComplexMatrix correction_unitary(BellIndex i);

/// V_i m V_i^dagger. Requires a trace-1 Hermitian input.
ComplexMatrix bob_correct(BellIndex i, const ComplexMatrix &m);

/// The 4x4 matrix of m -> V m V^dagger acting on (E11, E12, E21, E22) coordinates.
ComplexMatrix conjugation_map(const ComplexMatrix &v);

/// Alice tells Bob which Bell projection she applied.
struct TwoBits {
    BellIndex index;
    bool operator==(const TwoBits &) const = default;
};
/// Alice only signals that her preparation has happened; the operation was agreed beforehand.
struct OneBitPing {
    bool operator==(const OneBitPing &) const = default;
};
/// Operation and timing agreed beforehand; nothing is sent.
struct PreAgreed {
    bool operator==(const PreAgreed &) const = default;
};

using ClassicalMessage = std::variant<TwoBits, OneBitPing, PreAgreed>;

int bits_sent(const ClassicalMessage &message);
std::string to_string(const ClassicalMessage &message);

/// A Bell projection selected by index, or an arbitrary preparation tensor.
using Preparation = std::variant<BellIndex, PreparationTensor>;

PreparationTensor tensor_of(const Preparation &prep);
/// "bell1".."bell4", "paut", or "custom".
std::string to_string(const Preparation &prep);
/// Parses "bell1".."bell4" or "paut". Throws std::invalid_argument otherwise.
Preparation parse_preparation(const std::string &name);

}  // namespace enstele
