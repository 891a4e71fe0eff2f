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

// Bell-type basis, the four Bell projectors, Pauli matrices, matrix units and
// embeddings into the (C, A, B) space.

#pragma once

#include <array>
#include <optional>

#include "enstele/linalg.hpp"

namespace enstele {

enum class Parity { Even, Odd };
enum class Sign { Plus, Minus };

/// Index of a Bell projector: 1, 2 are the even states (+, -), 3, 4 the odd states (+, -).
class BellIndex {
   public:
    /// Throws std::out_of_range outside 1..4.
    explicit BellIndex(int value);

    int value() const noexcept { return value_; }
    Parity parity() const noexcept { return value_ <= 2 ? Parity::Even : Parity::Odd; }
    Sign sign() const noexcept { return value_ % 2 == 1 ? Sign::Plus : Sign::Minus; }

    static std::array<BellIndex, 4> all() { return {BellIndex(1), BellIndex(2), BellIndex(3), BellIndex(4)}; }

    bool operator==(const BellIndex &) const = default;

   private:
    int value_;
};

using Vector4 = std::array<Complex, 4>;

/// (|x1 y1> +- |x2 y2>)/sqrt2 for even parity, (|x1 y2> +- |x2 y1>)/sqrt2 for odd.
Vector4 bell_vector(Parity parity, Sign sign);

/// Which pair of factors a two-factor operator acts on.
enum class Placement { AB, CA };

SubsystemLayout layout_of(Placement placement);

/// A matrix tagged with the factors it acts on.
struct PlacedOperator {
    ComplexMatrix matrix;
    SubsystemLayout layout;
};

/// Projector onto bell_vector(i). The CA placement is the primed operator;
/// its numbers are identical to the AB placement.
PlacedOperator bell_rho(BellIndex i, Placement placement = Placement::AB);

/// |x_row><x_col| on one factor, rows and columns counted from 1.
struct MatrixUnit {
    Factor subsystem;
    int row;
    int col;

    ComplexMatrix matrix() const;
    bool operator==(const MatrixUnit &) const = default;
};

/// E_ij E_lq = E_iq if j == l, zero (nullopt) otherwise. Throws LayoutError
/// when the units live on different factors.
std::optional<MatrixUnit> compose(const MatrixUnit &lhs, const MatrixUnit &rhs);

enum class Pauli { Sigma1, Sigma3 };

ComplexMatrix pauli(Pauli k);

/// op (x) identity on the remaining factors of `total`, with indices permuted
/// into `total`'s ordering. `op_layout` names the factors `op` acts on, in the
/// order of op's own tensor structure.
ComplexMatrix embed(const ComplexMatrix &op, const SubsystemLayout &op_layout,
                    const SubsystemLayout &total = SubsystemLayout::total());

inline ComplexMatrix embed(const PlacedOperator &op, const SubsystemLayout &total = SubsystemLayout::total()) {
    return embed(op.matrix, op.layout, total);
}

/// Smallest eigenvalue of the partial transpose on the second factor of `layout`.
double min_partial_transpose_eigenvalue(const ComplexMatrix &op, const SubsystemLayout &layout);

/// PPT test for a two-qubit statistical operator: true iff the partial
/// transpose has an eigenvalue below -tol::kHermitian. Throws
/// InvalidStateError if `op` is not a statistical operator.
bool ppt_entangled(const ComplexMatrix &op, const SubsystemLayout &layout);

inline bool ppt_entangled(const PlacedOperator &op) { return ppt_entangled(op.matrix, op.layout); }

}  // namespace enstele
