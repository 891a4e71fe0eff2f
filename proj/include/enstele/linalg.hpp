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

// Dense complex matrix algebra for the 2-, 4- and 8-dimensional spaces built
// from up to three qubit factors C, A, B.
//
// Index convention: for a layout (F0, F1, F2) the basis state |f0 f1 f2> has
// flat index 4*f0 + 2*f1 + f2, i.e. the last factor varies fastest. Matrices
// are stored row-major.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "enstele/errors.hpp"

namespace enstele {

using Complex = std::complex<double>;

namespace tol {
inline constexpr double kHermitian = 1e-10;  ///< max |a_ij - conj(a_ji)| accepted as Hermitian
inline constexpr double kEigen = 1e-10;      ///< eigenvalue accuracy
inline constexpr double kEqual = 1e-12;      ///< default entrywise equality
inline constexpr double kJacobiOffDiag = 1e-13;
}  // namespace tol

class ComplexMatrix {
   public:
    /// 2x2 zero matrix.
    ComplexMatrix();
    /// Takes `dim*dim` row-major entries. Throws DimensionError for an unsupported
    /// dimension or entry count, Error for a non-finite entry.
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

    static ComplexMatrix zero(std::size_t dim);
    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
    static ComplexMatrix from_function(std::size_t dim,
                                       const std::function<Complex(std::size_t, std::size_t)> &f);

    std::size_t dim() const noexcept { return dim_; }
    const Complex &operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }
    std::span<const Complex> entries() const noexcept { return data_; }

    ComplexMatrix operator+(const ComplexMatrix &other) const;
    ComplexMatrix operator-(const ComplexMatrix &other) const;
    ComplexMatrix operator*(const ComplexMatrix &other) const;
    ComplexMatrix operator*(Complex scale) const;
    ComplexMatrix operator/(Complex scale) const;
    ComplexMatrix &operator+=(const ComplexMatrix &other);

    bool operator==(const ComplexMatrix &other) const = default;

    std::string to_string(int precision = 6) const;

   private:
    std::size_t dim_;
    std::vector<Complex> data_;
};

inline ComplexMatrix operator*(Complex scale, const ComplexMatrix &m) { return m * scale; }

/// Qubit factor labels: the unknown ensemble C, Alice's EPR half A, Bob's half B.
enum class Factor : char { C = 'C', A = 'A', B = 'B' };

std::string to_string(Factor f);

/// Ordered list of two-level factors describing how a matrix index space factorizes.
class SubsystemLayout {
   public:
    SubsystemLayout(std::initializer_list<Factor> factors);
    explicit SubsystemLayout(std::vector<Factor> factors);

    /// The (C, A, B) layout of the full three-party space.
    static SubsystemLayout total() { return {Factor::C, Factor::A, Factor::B}; }

    std::size_t size() const noexcept { return factors_.size(); }
    std::size_t dim() const noexcept { return std::size_t{1} << factors_.size(); }
    const std::vector<Factor> &factors() const noexcept { return factors_; }
    bool contains(Factor f) const;
    /// Position of `f` in the ordering. Throws LayoutError if absent.
    std::size_t position(Factor f) const;
    /// Bit of the flat index that carries factor `f`.
    std::size_t bit(Factor f) const { return size() - 1 - position(f); }
    SubsystemLayout without(const std::vector<Factor> &removed) const;
    std::string to_string() const;

    bool operator==(const SubsystemLayout &other) const = default;

   private:
    std::vector<Factor> factors_;
};

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b);
/// Kronecker product a (x) b; `a` occupies the slower index.
ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);
Complex trace(const ComplexMatrix &a);
ComplexMatrix adjoint(const ComplexMatrix &a);
ComplexMatrix transpose(const ComplexMatrix &a);

/// Traces out `traced_out` and returns the operator on the remaining factors,
/// in the layout's original order.
ComplexMatrix partial_trace(const ComplexMatrix &m, const SubsystemLayout &layout,
                            const std::vector<Factor> &traced_out);

/// Transposes the indices of factor `on` only.
ComplexMatrix partial_transpose(const ComplexMatrix &m, const SubsystemLayout &layout, Factor on);

/// Gauss-Jordan inverse with partial pivoting. Throws DimensionError when a
/// pivot falls below `pivot_tolerance`.
ComplexMatrix inverse(const ComplexMatrix &a, double pivot_tolerance = 1e-12);

/// Largest |a_ij - b_ij|.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
double max_abs_entry(const ComplexMatrix &a);
/// Largest |a_ij - conj(a_ji)|.
double max_hermitian_asymmetry(const ComplexMatrix &a);

/// All eigenvalues of a Hermitian matrix in descending order, via cyclic
/// complex Jacobi rotations. Throws NotHermitianError when the asymmetry
/// exceeds tol::kHermitian.
std::vector<double> hermitian_spectrum(const ComplexMatrix &a);

/// max |eigenvalue| of a Hermitian matrix.
double spectral_norm(const ComplexMatrix &a);

/// Throws InvalidStateError naming the first violated invariant
/// (Hermitian, unit trace, positive semidefinite).
void check_statistical_operator(const ComplexMatrix &m, double tolerance = tol::kHermitian);

}  // namespace enstele
