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

#include "enstele/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "enstele/kernels.hpp"
#include "enstele/session.hpp"

namespace enstele {

namespace {

constexpr double kImaginaryResidue = 1e-12;

Complex bilinear(const Vector4 &a, const Vector4 &b) {
    Complex s{};
    for (std::size_t i = 0; i < 4; ++i) {
        s += a[i] * b[i];
    }
    return s;
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

FidelityReport compare_forms(double trace_form, double vector_form) {
    FidelityReport r;
    r.trace_form = trace_form;
    r.vector_form = vector_form;
    const double diff = std::abs(trace_form - vector_form);
    r.agree = diff < kFormAgreement;
    if (!r.agree) {
        std::ostringstream note;
        note.precision(6);
        note << "trace and vector forms differ by " << diff
             << "; the vector form uses an unconjugated product and misses the phase of c12";
        r.note = note.str();
    }
    return r;
}

double fidelity_trace(const ComplexMatrix &rho, const ComplexMatrix &sigma) {
    if (rho.dim() != 2 || sigma.dim() != 2) {
        throw DimensionError("fidelity_trace expects 2x2 operators");
    }
    for (const ComplexMatrix *m : {&rho, &sigma}) {
        if (std::abs(trace(*m) - 1.0) > tol::kHermitian) {
            throw InvalidStateError("fidelity_trace: operator must have trace 1");
        }
    }
    const Complex f = trace(rho * sigma);
    if (std::abs(f.imag()) > kImaginaryResidue) {
        throw InvalidStateError("fidelity_trace: imaginary residue " + std::to_string(f.imag()) +
                                " indicates a non-Hermitian operator");
    }
    return f.real();
}

double fidelity_trace(const CoefficientVector &c, const ComplexMatrix &bob) { return fidelity_trace(rho_c(c), bob); }

double fidelity_vector(const CoefficientVector &c, const TransformationMatrix &t) {
    const Vector4 cv = c.as_vector();
    const Vector4 tc = t.apply(cv);
    const Complex norm = trace_norm(tc);
    if (std::abs(norm.imag()) > kImaginaryResidue * std::max(1.0, std::abs(norm.real())) ||
        norm.real() <= kAnnihilationThreshold) {
        throw AnnihilatedError("fidelity_vector: T c has no positive trace");
    }
    Vector4 contamination{};
    for (std::size_t i = 0; i < 4; ++i) {
        contamination[i] = tc[i] / norm - cv[i];
    }
    return (bilinear(cv, cv) + bilinear(cv, contamination)).real();
}

double lazy_fidelity(const CoefficientVector &c) {
    return 2.0 * c.c11() * c.c22() - 2.0 * (c.c12() * c.c21()).real();
}

LazyOptimum maximize_lazy_fidelity(int grid_resolution) {
    if (grid_resolution < 10) {
        throw std::invalid_argument("maximize_lazy_fidelity: resolution must be at least 10");
    }
    const double n = grid_resolution;
    auto at = [](double c11, double fraction) {
        c11 = std::clamp(c11, 0.0, 1.0);
        return CoefficientVector::make(c11, fraction * std::sqrt(c11 * (1.0 - c11)));
    };

    double best = -std::numeric_limits<double>::infinity();
    double best_c11 = 0.0;
    double best_fraction = 0.0;
    for (int i = 0; i <= grid_resolution; ++i) {
        for (int j = 0; j <= grid_resolution; ++j) {
            const double f = lazy_fidelity(at(i / n, j / n));
            if (f > best) {
                best = f;
                best_c11 = i / n;
                best_fraction = j / n;
            }
        }
    }

    // Golden-section refinement of c11 inside the neighbouring grid cells.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = std::max(0.0, best_c11 - 1.0 / n);
    double hi = std::min(1.0, best_c11 + 1.0 / n);
    auto objective = [&](double x) { return lazy_fidelity(at(x, best_fraction)); };
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = objective(x1);
    double f2 = objective(x2);
    for (int iter = 0; iter < 200 && hi - lo > 1e-14; ++iter) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = objective(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = objective(x1);
        }
    }
    const double refined = 0.5 * (lo + hi);
    if (objective(refined) >= best) {
        best_c11 = refined;
        best = objective(refined);
    }
    return {at(best_c11, best_fraction), best};
}

std::string to_string(Sampler s) { return s == Sampler::PureUniform ? "pure_uniform" : "mixed_uniform"; }

CoefficientVector sample_coefficients(Sampler sampler, std::uint64_t seed, std::uint64_t index) {
    auto engine = substream(seed, index);
    std::normal_distribution<double> normal;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double norm = 0.0;
    do {
        x = normal(engine);
        y = normal(engine);
        z = normal(engine);
        norm = std::sqrt(x * x + y * y + z * z);
    } while (norm < 1e-12);
    double radius = 1.0;
    if (sampler == Sampler::MixedUniform) {
        radius = std::cbrt(std::uniform_real_distribution<double>(0.0, 1.0)(engine));
    }
    const double s = radius / norm;
    return CoefficientVector::from_bloch(s * x, s * y, s * z);
}

FidelityAverage summarize(const std::vector<FidelitySample> &samples) {
    FidelityAverage a;
    a.n = samples.size();
    if (a.n == 0) {
        return a;
    }
    double sum = 0.0;
    double vsum = 0.0;
    for (const auto &s : samples) {
        sum += s.trace_form;
        vsum += s.vector_form;
    }
    a.mean = sum / a.n;
    a.vector_mean = vsum / a.n;
    if (a.n > 1) {
        double ss = 0.0;
        double vss = 0.0;
        for (const auto &s : samples) {
            ss += (s.trace_form - a.mean) * (s.trace_form - a.mean);
            vss += (s.vector_form - a.vector_mean) * (s.vector_form - a.vector_mean);
        }
        a.std_error = std::sqrt(ss / (a.n - 1) / a.n);
        a.vector_std_error = std::sqrt(vss / (a.n - 1) / a.n);
    }
    return a;
}

ClassicalMessage default_message(const Preparation &prep, bool bob_acts) {
    if (const auto *i = std::get_if<BellIndex>(&prep)) {
        if (bob_acts) {
            return TwoBits{*i};
        }
        return OneBitPing{};
    }
    return PreAgreed{};
}

FidelitySample evaluate_sample(const Preparation &prep, bool bob_acts, Sampler sampler, std::uint64_t seed,
                               std::uint64_t index) {
    const CoefficientVector c = sample_coefficients(sampler, seed, index);
    const SessionRecord rec = run_session(c, prep, default_message(prep, bob_acts), bob_acts);
    return {rec.fidelity.trace_form, rec.fidelity.vector_form};
}

FidelityAverage average_fidelity(const Preparation &prep, bool bob_acts, Sampler sampler, std::size_t n,
                                 std::uint64_t seed) {
    if (n < 100) {
        throw std::invalid_argument("average_fidelity: at least 100 samples required");
    }
    return summarize(parallel::fidelity_samples(prep, bob_acts, sampler, n, seed));
}

std::size_t SweepGrid::size() const {
    return static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution) *
           static_cast<std::size_t>(phases);
}

void SweepGrid::validate() const {
    if (resolution < 2) {
        throw std::invalid_argument("sweep resolution must be at least 2");
    }
    if (phases < 1) {
        throw std::invalid_argument("sweep phase count must be at least 1");
    }
}

SweepRow evaluate_sweep_point(const SweepGrid &grid, std::size_t index, const Preparation &prep, bool bob_acts) {
    const std::size_t n = static_cast<std::size_t>(grid.resolution);
    const std::size_t p = static_cast<std::size_t>(grid.phases);
    const std::size_t k = index % p;
    const std::size_t j = (index / p) % n;
    const std::size_t i = index / (p * n);

    const double c11 = static_cast<double>(i) / static_cast<double>(n - 1);
    const double fraction = static_cast<double>(j) / static_cast<double>(n - 1);
    const double abs12 = fraction * std::sqrt(c11 * (1.0 - c11));
    const double arg12 = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p);
    const CoefficientVector c = CoefficientVector::make(c11, std::polar(abs12, arg12));
    const SessionRecord rec = run_session(c, prep, default_message(prep, bob_acts), bob_acts);
    return SweepRow{c11, abs12, arg12, c, lazy_fidelity(c), rec.fidelity};
}

}  // namespace enstele
