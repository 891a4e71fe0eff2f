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

#include "enstele/bell.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace enstele {

BellIndex::BellIndex(int value) : value_(value) {
    if (value < 1 || value > 4) {
        throw std::out_of_range("Bell index must be in 1..4, got " + std::to_string(value));
    }
}

Vector4 bell_vector(Parity parity, Sign sign) {
    const double h = 1.0 / std::sqrt(2.0);
    const double s = sign == Sign::Plus ? h : -h;
    // Flat index 2*x + y for |x_{x+1} y_{y+1}>.
    if (parity == Parity::Even) {
        return {h, 0.0, 0.0, s};
    }
    return {0.0, h, s, 0.0};
}

SubsystemLayout layout_of(Placement placement) {
    return placement == Placement::AB ? SubsystemLayout{Factor::A, Factor::B} : SubsystemLayout{Factor::C, Factor::A};
}

PlacedOperator bell_rho(BellIndex i, Placement placement) {
    // w = sqrt(2) v.
    const double s = i.sign() == Sign::Plus ? 1.0 : -1.0;
    const std::array<double, 4> w = i.parity() == Parity::Even ? std::array<double, 4>{1.0, 0.0, 0.0, s}
                                                               : std::array<double, 4>{0.0, 1.0, s, 0.0};
    auto m = ComplexMatrix::from_function(4, [&](std::size_t r, std::size_t c) { return Complex(0.5 * w[r] * w[c]); });
    return {std::move(m), layout_of(placement)};
}

ComplexMatrix MatrixUnit::matrix() const {
    if (row < 1 || row > 2 || col < 1 || col > 2) {
        throw std::out_of_range("matrix unit indices must be 1 or 2");
    }
    return ComplexMatrix::from_function(2, [&](std::size_t r, std::size_t c) {
        return (static_cast<int>(r) == row - 1 && static_cast<int>(c) == col - 1) ? Complex{1.0} : Complex{};
    });
}

std::optional<MatrixUnit> compose(const MatrixUnit &lhs, const MatrixUnit &rhs) {
    if (lhs.subsystem != rhs.subsystem) {
        throw LayoutError("cannot compose matrix units on " + to_string(lhs.subsystem) + " and " +
                          to_string(rhs.subsystem));
    }
    if (lhs.col != rhs.row) {
        return std::nullopt;
    }
    return MatrixUnit{lhs.subsystem, lhs.row, rhs.col};
}

ComplexMatrix pauli(Pauli k) {
    if (k == Pauli::Sigma1) {
        return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    }
    return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
}

ComplexMatrix embed(const ComplexMatrix &op, const SubsystemLayout &op_layout, const SubsystemLayout &total) {
    if (op.dim() != op_layout.dim()) {
        throw DimensionError("embed: operator dim " + std::to_string(op.dim()) + " does not match layout " +
                             op_layout.to_string());
    }
    // Global bit carrying each of op's factors, most significant first.
    std::vector<std::size_t> bits;
    std::size_t op_mask = 0;
    for (Factor f : op_layout.factors()) {
        const std::size_t b = total.bit(f);
        bits.push_back(b);
        op_mask |= std::size_t{1} << b;
    }
    auto local = [&](std::size_t global) {
        std::size_t idx = 0;
        for (std::size_t b : bits) {
            idx = (idx << 1) | ((global >> b) & 1U);
        }
        return idx;
    };
    return ComplexMatrix::from_function(total.dim(), [&](std::size_t r, std::size_t c) {
        if ((r & ~op_mask) != (c & ~op_mask)) {
            return Complex{};
        }
        return op(local(r), local(c));
    });
}

double min_partial_transpose_eigenvalue(const ComplexMatrix &op, const SubsystemLayout &layout) {
    if (layout.size() != 2) {
        throw LayoutError("partial-transpose test needs a two-factor layout, got " + layout.to_string());
    }
    return hermitian_spectrum(partial_transpose(op, layout, layout.factors()[1])).back();
}

bool ppt_entangled(const ComplexMatrix &op, const SubsystemLayout &layout) {
    check_statistical_operator(op);
    return min_partial_transpose_eigenvalue(op, layout) < -tol::kHermitian;
}

}  // namespace enstele
