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

#include "enstele/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace enstele {

namespace {

bool supported_dim(std::size_t dim) { return dim == 2 || dim == 4 || dim == 8; }

void require_same_dim(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
    if (a.dim() != b.dim()) {
        throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                             std::to_string(b.dim()) + ")");
    }
}

void require_layout_dim(const ComplexMatrix &m, const SubsystemLayout &layout, const char *op) {
    if (m.dim() != layout.dim()) {
        throw DimensionError(std::string(op) + ": matrix dim " + std::to_string(m.dim()) + " does not match layout " +
                             layout.to_string() + " of dim " + std::to_string(layout.dim()));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix() : dim_(2), data_(4) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries) : dim_(dim), data_(std::move(entries)) {
    if (!supported_dim(dim_)) {
        throw DimensionError("unsupported matrix dimension " + std::to_string(dim_) + " (expected 2, 4 or 8)");
    }
    if (data_.size() != dim_ * dim_) {
        throw DimensionError("expected " + std::to_string(dim_ * dim_) + " entries, got " +
                             std::to_string(data_.size()));
    }
    for (const auto &z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw Error("non-finite matrix entry");
        }
    }
}

ComplexMatrix ComplexMatrix::zero(std::size_t dim) { return ComplexMatrix(dim, std::vector<Complex>(dim * dim)); }

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    std::vector<Complex> e(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        e[i * dim + i] = 1.0;
    }
    return ComplexMatrix(dim, std::move(e));
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    std::vector<Complex> e;
    e.reserve(rows.size() * rows.size());
    for (const auto &row : rows) {
        if (row.size() != rows.size()) {
            throw DimensionError("from_rows: matrix must be square");
        }
        e.insert(e.end(), row.begin(), row.end());
    }
    return ComplexMatrix(rows.size(), std::move(e));
}

ComplexMatrix ComplexMatrix::from_function(std::size_t dim,
                                           const std::function<Complex(std::size_t, std::size_t)> &f) {
    std::vector<Complex> e(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            e[r * dim + c] = f(r, c);
        }
    }
    return ComplexMatrix(dim, std::move(e));
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix &other) const {
    require_same_dim(*this, other, "add");
    std::vector<Complex> e(data_);
    for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] += other.data_[i];
    }
    return ComplexMatrix(dim_, std::move(e));
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix &other) const {
    require_same_dim(*this, other, "subtract");
    std::vector<Complex> e(data_);
    for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] -= other.data_[i];
    }
    return ComplexMatrix(dim_, std::move(e));
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix &other) const { return matmul(*this, other); }

ComplexMatrix ComplexMatrix::operator*(Complex scale) const {
    std::vector<Complex> e(data_);
    for (auto &z : e) {
        z *= scale;
    }
    return ComplexMatrix(dim_, std::move(e));
}

ComplexMatrix ComplexMatrix::operator/(Complex scale) const {
    std::vector<Complex> e(data_);
    for (auto &z : e) {
        z /= scale;
    }
    return ComplexMatrix(dim_, std::move(e));
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    *this = *this + other;
    return *this;
}

std::string ComplexMatrix::to_string(int precision) const {
    std::ostringstream out;
    out << std::setprecision(precision);
    for (std::size_t r = 0; r < dim_; ++r) {
        out << (r == 0 ? "[" : " ");
        for (std::size_t c = 0; c < dim_; ++c) {
            const Complex z = (*this)(r, c);
            out << (c == 0 ? "" : ", ") << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
        }
        out << (r + 1 == dim_ ? "]" : "\n");
    }
    return out.str();
}

std::string to_string(Factor f) { return std::string(1, static_cast<char>(f)); }

SubsystemLayout::SubsystemLayout(std::initializer_list<Factor> factors)
    : SubsystemLayout(std::vector<Factor>(factors)) {}

SubsystemLayout::SubsystemLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
    if (factors_.empty() || factors_.size() > 3) {
        throw LayoutError("layout must hold between 1 and 3 factors");
    }
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        for (std::size_t j = i + 1; j < factors_.size(); ++j) {
            if (factors_[i] == factors_[j]) {
                throw LayoutError("duplicate factor " + enstele::to_string(factors_[i]) + " in layout");
            }
        }
    }
}

bool SubsystemLayout::contains(Factor f) const {
    return std::find(factors_.begin(), factors_.end(), f) != factors_.end();
}

std::size_t SubsystemLayout::position(Factor f) const {
    auto it = std::find(factors_.begin(), factors_.end(), f);
    if (it == factors_.end()) {
        throw LayoutError("factor " + enstele::to_string(f) + " not in layout " + to_string());
    }
    return static_cast<std::size_t>(it - factors_.begin());
}

SubsystemLayout SubsystemLayout::without(const std::vector<Factor> &removed) const {
    for (Factor f : removed) {
        position(f);
    }
    std::vector<Factor> kept;
    for (Factor f : factors_) {
        if (std::find(removed.begin(), removed.end(), f) == removed.end()) {
            kept.push_back(f);
        }
    }
    return SubsystemLayout(std::move(kept));
}

std::string SubsystemLayout::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        s += (i ? "(x)" : "") + enstele::to_string(factors_[i]);
    }
    return s;
}

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "matmul");
    const std::size_t n = a.dim();
    std::vector<Complex> e(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex ark = a(r, k);
            if (ark == Complex{}) {
                continue;
            }
            for (std::size_t c = 0; c < n; ++c) {
                e[r * n + c] += ark * b(k, c);
            }
        }
    }
    return ComplexMatrix(n, std::move(e));
}

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    const std::size_t n = na * nb;
    if (n > 8) {
        throw DimensionError("tensor: result dimension " + std::to_string(n) + " exceeds 8");
    }
    std::vector<Complex> e(n * n);
    for (std::size_t ra = 0; ra < na; ++ra) {
        for (std::size_t ca = 0; ca < na; ++ca) {
            for (std::size_t rb = 0; rb < nb; ++rb) {
                for (std::size_t cb = 0; cb < nb; ++cb) {
                    e[(ra * nb + rb) * n + (ca * nb + cb)] = a(ra, ca) * b(rb, cb);
                }
            }
        }
    }
    return ComplexMatrix(n, std::move(e));
}

Complex trace(const ComplexMatrix &a) {
    Complex t{};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        t += a(i, i);
    }
    return t;
}

ComplexMatrix adjoint(const ComplexMatrix &a) {
    return ComplexMatrix::from_function(a.dim(), [&](std::size_t r, std::size_t c) { return std::conj(a(c, r)); });
}

ComplexMatrix transpose(const ComplexMatrix &a) {
    return ComplexMatrix::from_function(a.dim(), [&](std::size_t r, std::size_t c) { return a(c, r); });
}

ComplexMatrix partial_trace(const ComplexMatrix &m, const SubsystemLayout &layout,
                            const std::vector<Factor> &traced_out) {
    require_layout_dim(m, layout, "partial_trace");
    const SubsystemLayout kept = layout.without(traced_out);
    if (kept.size() == layout.size()) {
        return m;
    }

    std::vector<std::size_t> kept_bits;
    std::vector<std::size_t> traced_bits;
    for (Factor f : kept.factors()) {
        kept_bits.push_back(layout.bit(f));
    }
    for (Factor f : layout.factors()) {
        if (!kept.contains(f)) {
            traced_bits.push_back(layout.bit(f));
        }
    }

    // Scatter a reduced index (bits in kept.factors() order, most significant
    // first) back into global bit positions.
    auto scatter = [](std::size_t local, const std::vector<std::size_t> &bits) {
        std::size_t global = 0;
        const std::size_t k = bits.size();
        for (std::size_t i = 0; i < k; ++i) {
            if ((local >> (k - 1 - i)) & 1U) {
                global |= std::size_t{1} << bits[i];
            }
        }
        return global;
    };

    const std::size_t out_dim = kept.dim();
    const std::size_t traced_dim = std::size_t{1} << traced_bits.size();
    std::vector<Complex> e(out_dim * out_dim);
    for (std::size_t r = 0; r < out_dim; ++r) {
        const std::size_t gr = scatter(r, kept_bits);
        for (std::size_t c = 0; c < out_dim; ++c) {
            const std::size_t gc = scatter(c, kept_bits);
            Complex sum{};
            for (std::size_t t = 0; t < traced_dim; ++t) {
                const std::size_t gt = scatter(t, traced_bits);
                sum += m(gr | gt, gc | gt);
            }
            e[r * out_dim + c] = sum;
        }
    }
    return ComplexMatrix(out_dim, std::move(e));
}

ComplexMatrix partial_transpose(const ComplexMatrix &m, const SubsystemLayout &layout, Factor on) {
    require_layout_dim(m, layout, "partial_transpose");
    const std::size_t mask = std::size_t{1} << layout.bit(on);
    return ComplexMatrix::from_function(m.dim(), [&](std::size_t r, std::size_t c) {
        // Swap the chosen factor's bit between row and column index.
        const std::size_t rb = r & mask;
        const std::size_t cb = c & mask;
        return m((r & ~mask) | cb, (c & ~mask) | rb);
    });
}

ComplexMatrix inverse(const ComplexMatrix &a, double pivot_tolerance) {
    const std::size_t n = a.dim();
    std::vector<Complex> lhs(a.entries().begin(), a.entries().end());
    std::vector<Complex> rhs(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        rhs[i * n + i] = 1.0;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(lhs[r * n + col]) > std::abs(lhs[pivot * n + col])) {
                pivot = r;
            }
        }
        if (std::abs(lhs[pivot * n + col]) < pivot_tolerance) {
            throw DimensionError("inverse: matrix is singular");
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(lhs[pivot * n + c], lhs[col * n + c]);
                std::swap(rhs[pivot * n + c], rhs[col * n + c]);
            }
        }
        const Complex inv = 1.0 / lhs[col * n + col];
        for (std::size_t c = 0; c < n; ++c) {
            lhs[col * n + c] *= inv;
            rhs[col * n + c] *= inv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            const Complex f = lhs[r * n + col];
            if (r == col || f == Complex{}) {
                continue;
            }
            for (std::size_t c = 0; c < n; ++c) {
                lhs[r * n + c] -= f * lhs[col * n + c];
                rhs[r * n + c] -= f * rhs[col * n + c];
            }
        }
    }
    return ComplexMatrix(n, std::move(rhs));
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "max_abs_diff");
    double d = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        d = std::max(d, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return d;
}

double max_abs_entry(const ComplexMatrix &a) {
    double d = 0.0;
    for (const auto &z : a.entries()) {
        d = std::max(d, std::abs(z));
    }
    return d;
}

double max_hermitian_asymmetry(const ComplexMatrix &a) {
    double d = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r) {
        for (std::size_t c = r; c < a.dim(); ++c) {
            d = std::max(d, std::abs(a(r, c) - std::conj(a(c, r))));
        }
    }
    return d;
}

std::vector<double> hermitian_spectrum(const ComplexMatrix &a) {
    const double asym = max_hermitian_asymmetry(a);
    if (asym > tol::kHermitian) {
        throw NotHermitianError("hermitian_spectrum: matrix is not Hermitian (max asymmetry " +
                                    std::to_string(asym) + ")",
                                asym);
    }
    const std::size_t n = a.dim();
    // Work on the exactly Hermitian part.
    std::vector<Complex> w(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            w[r * n + c] = 0.5 * (a(r, c) + std::conj(a(c, r)));
        }
    }
    auto at = [&](std::size_t r, std::size_t c) -> Complex & { return w[r * n + c]; };

    double scale = 0.0;
    for (const auto &z : w) {
        scale += std::norm(z);
    }
    const double threshold = tol::kJacobiOffDiag * std::max(1.0, std::sqrt(scale));

    auto off_diagonal_mass = [&] {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                if (r != c) {
                    s += std::norm(at(r, c));
                }
            }
        }
        return std::sqrt(s);
    };

    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_mass() >= threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = at(p, q);
                const double g = std::abs(apq);
                if (g == 0.0) {
                    continue;
                }
                // U = D R: D removes the phase of a_pq, R is the real Jacobi
                // rotation that annihilates the resulting real off-diagonal.
                const Complex phase = apq / g;
                const double app = at(p, p).real();
                const double aqq = at(q, q).real();
                const double theta = (aqq - app) / (2.0 * g);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double cs = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * cs;

                const Complex u_pp = cs;
                const Complex u_pq = sn;
                const Complex u_qp = -sn * std::conj(phase);
                const Complex u_qq = cs * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {  // W <- W U
                    const Complex wkp = at(k, p);
                    const Complex wkq = at(k, q);
                    at(k, p) = wkp * u_pp + wkq * u_qp;
                    at(k, q) = wkp * u_pq + wkq * u_qq;
                }
                for (std::size_t k = 0; k < n; ++k) {  // W <- U^dagger W
                    const Complex wpk = at(p, k);
                    const Complex wqk = at(q, k);
                    at(p, k) = std::conj(u_pp) * wpk + std::conj(u_qp) * wqk;
                    at(q, k) = std::conj(u_pq) * wpk + std::conj(u_qq) * wqk;
                }
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                at(p, p) = at(p, p).real();
                at(q, q) = at(q, q).real();
            }
        }
    }

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) {
        eig[i] = at(i, i).real();
    }
    std::sort(eig.begin(), eig.end(), std::greater<>());
    return eig;
}

double spectral_norm(const ComplexMatrix &a) {
    const auto eig = hermitian_spectrum(a);
    return std::max(std::abs(eig.front()), std::abs(eig.back()));
}

void check_statistical_operator(const ComplexMatrix &m, double tolerance) {
    const double asym = max_hermitian_asymmetry(m);
    if (asym > tolerance) {
        throw InvalidStateError("not a statistical operator: not Hermitian (max asymmetry " + std::to_string(asym) +
                                ")");
    }
    const Complex tr = trace(m);
    if (std::abs(tr - 1.0) > tolerance) {
        std::ostringstream msg;
        msg << "not a statistical operator: trace is " << tr.real() << (tr.imag() < 0 ? "-" : "+")
            << std::abs(tr.imag()) << "i, expected 1";
        throw InvalidStateError(msg.str());
    }
    const double min_eig = hermitian_spectrum(m).back();
    if (min_eig < -tolerance) {
        throw InvalidStateError("not a statistical operator: negative eigenvalue " + std::to_string(min_eig));
    }
}

}  // namespace enstele
