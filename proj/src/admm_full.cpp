// SPDX-License-Identifier: Apache-2.0
//
// hybridsim: ADMM hybrid precoding and combining for mmWave MIMO
// Copyright (C) 2026 The hybridsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "hybridsim/admm_full.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "hybridsim/rng.hpp"

namespace hybridsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ComplexMatrix finalize_baseband(const ComplexMatrix &f_rf, const ComplexMatrix &target,
                                bool normalize_power, const std::vector<TraceEntry> &trace)
{
    ComplexMatrix f_bb;
    try {
        f_bb = least_squares_fbb(f_rf, target);
    } catch (const RankDeficient &e) {
        throw DesignError(std::string("final baseband solve failed: ") + e.what(), trace);
    }
    if (normalize_power) {
        const double norm = (f_rf * f_bb).norm();
        if (!(norm > 0.0))
            throw DesignError("power normalization of a zero precoder", trace);
        f_bb *= std::sqrt(static_cast<double>(target.cols())) / norm;
    }
    return f_bb;
}

} // namespace

void AdmmConfig::validate() const
{
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw std::invalid_argument("AdmmConfig: rho must be positive");
    if (max_iters < 1)
        throw std::invalid_argument("AdmmConfig: max_iters must be >= 1");
    if (!(tau >= 0.0))
        throw std::invalid_argument("AdmmConfig: tau must be non-negative");
    if (phase_bits && (*phase_bits < 1 || *phase_bits > 30))
        throw std::invalid_argument("AdmmConfig: phase_bits must lie in [1, 30]");
}

const char *to_string(Structure s)
{
    return s == Structure::fully_connected ? "fully_connected" : "partially_connected";
}

Complex project_unit_modulus(Complex x, std::optional<int> phase_bits)
{
    const double mag = std::abs(x);
    if (!phase_bits)
        return mag > 0.0 ? x / mag : Complex(1.0, 0.0);

    const double levels = std::ldexp(1.0, *phase_bits);
    const double step = kTwoPi / levels;
    double angle = mag > 0.0 ? std::arg(x) : 0.0;
    if (angle < 0.0)
        angle += kTwoPi;
    const double t = angle / step;
    double k = std::floor(t);
    if (t - k > 0.5)
        k += 1.0;
    if (k >= levels)
        k -= levels;
    return std::polar(1.0, k * step);
}

ComplexMatrix project_unit_modulus(const ComplexMatrix &x, std::optional<int> phase_bits)
{
    return x.unaryExpr([&](const Complex &v) { return project_unit_modulus(v, phase_bits); });
}

ComplexMatrix random_unit_modulus(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed)
{
    Rng rng(seed);
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            m(i, j) = std::polar(1.0, rng.uniform(0.0, kTwoPi));
    return m;
}

ComplexMatrix least_squares_fbb(const ComplexMatrix &f_rf, const ComplexMatrix &target)
{
    if (f_rf.rows() != target.rows())
        throw std::invalid_argument("least_squares_fbb: row mismatch");
    return solve_hpd(f_rf.adjoint() * f_rf, f_rf.adjoint() * target);
}

ComplexMatrix detail::frf_from_sums(const ComplexMatrix &cross, const ComplexMatrix &gram,
                                    const ComplexMatrix &r, const ComplexMatrix &w, double rho)
{
    const ComplexMatrix rhs = cross + rho * (r - w);
    ComplexMatrix a = gram;
    a.diagonal().array() += rho;
    // X A = rhs  <=>  A X^H = rhs^H, A Hermitian.
    return solve_hpd(a, rhs.adjoint()).adjoint();
}

ComplexMatrix step_frf(const AdmmState &state, const ComplexMatrix &target, double rho)
{
    const ComplexMatrix cross = target * state.f_bb.adjoint();
    const ComplexMatrix gram = state.f_bb * state.f_bb.adjoint();
    return detail::frf_from_sums(cross, gram, state.r, state.w, rho);
}

double factorization_objective(const ComplexMatrix &target, const ComplexMatrix &f_rf,
                               const ComplexMatrix &f_bb)
{
    return (target - f_rf * f_bb).squaredNorm();
}

void detail::check_dimensions(Eigen::Index n_tx, Eigen::Index n_s, int n_rf, const char *who)
{
    if (n_s < 1 || n_rf < n_s || n_rf > n_tx)
        throw std::invalid_argument(std::string(who) + ": require 1 <= N_s <= N_RF <= N_tx (N_s=" +
                                    std::to_string(n_s) + ", N_RF=" + std::to_string(n_rf) +
                                    ", N_tx=" + std::to_string(n_tx) + ")");
}

HybridFactors detail::design_with_projector(const ComplexMatrix &target, int n_rf, const AdmmConfig &cfg,
                                            bool normalize_power, const Projector &project,
                                            const IterationObserver &observer)
{
    check_dimensions(target.rows(), target.cols(), n_rf, "design_fully_connected");
    cfg.validate();

    HybridFactors out;
    AdmmState s;
    s.f_rf = project(random_unit_modulus(target.rows(), n_rf, cfg.seed));
    s.r = s.f_rf;
    s.w = ComplexMatrix::Zero(target.rows(), n_rf);
    try {
        s.f_bb = least_squares_fbb(s.f_rf, target);
    } catch (const RankDeficient &e) {
        throw DesignError(std::string("initial baseband solve failed: ") + e.what(), {});
    }

    double previous = factorization_objective(target, s.r, s.f_bb);
    out.trace.push_back({0, previous, 0.0});
    if (observer)
        observer(0, s);

    for (int t = 1; t <= cfg.max_iters; ++t) {
        try {
            s.f_rf = step_frf(s, target, cfg.rho);
            s.f_bb = least_squares_fbb(s.f_rf, target);
        } catch (const RankDeficient &e) {
            throw DesignError("iteration " + std::to_string(t) + ": " + e.what(), out.trace);
        }
        s.r = project(s.f_rf + s.w);
        s.w += s.f_rf - s.r;

        const double objective = factorization_objective(target, s.r, s.f_bb);
        out.trace.push_back({t, objective, (s.f_rf - s.r).norm()});
        out.iterations_used = t;
        if (observer)
            observer(t, s);
        if (std::abs(previous - objective) < cfg.tau)
            break;
        previous = objective;
    }

    out.f_rf = s.r;
    out.f_bb.push_back(finalize_baseband(out.f_rf, target, normalize_power, out.trace));
    out.final_objective = factorization_objective(target, out.f_rf, out.f_bb.front());
    out.structure = Structure::fully_connected;
    return out;
}

HybridFactors design_fully_connected(const ComplexMatrix &target, int n_rf, const AdmmConfig &cfg,
                                     bool normalize_power, const IterationObserver &observer)
{
    const auto bits = cfg.phase_bits;
    return detail::design_with_projector(
        target, n_rf, cfg, normalize_power,
        [bits](const ComplexMatrix &x) { return project_unit_modulus(x, bits); }, observer);
}

void write_trace_csv(std::ostream &out, const std::vector<TraceEntry> &trace)
{
    const auto old_precision = out.precision(17);
    out << "iteration,objective,primal_residual\n";
    for (const auto &e : trace)
        out << e.iteration << ',' << e.objective << ',' << e.primal_residual << '\n';
    out.precision(old_precision);
}

} // namespace hybridsim
