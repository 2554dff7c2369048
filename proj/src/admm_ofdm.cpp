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

#include "hybridsim/admm_ofdm.hpp"

#include <cmath>
#include <string>

namespace hybridsim {

namespace {

std::vector<ComplexMatrix> baseband_all(const ComplexMatrix &f_rf, const WidebandTargets &targets)
{
    std::vector<ComplexMatrix> out;
    out.reserve(targets.targets.size());
    for (const auto &t : targets.targets)
        out.push_back(least_squares_fbb(f_rf, t));
    return out;
}

} // namespace

void WidebandTargets::validate() const
{
    if (targets.empty())
        throw std::invalid_argument("WidebandTargets: at least one subcarrier required");
    const auto rows = targets.front().rows();
    const auto cols = targets.front().cols();
    for (std::size_t k = 1; k < targets.size(); ++k)
        if (targets[k].rows() != rows || targets[k].cols() != cols)
            throw std::invalid_argument("WidebandTargets: subcarrier " + std::to_string(k) +
                                        " has inconsistent dimensions");
}

ComplexMatrix step_frf_wideband(const WidebandState &state, const WidebandTargets &targets, double rho)
{
    targets.validate();
    if (state.f_bb.size() != targets.targets.size())
        throw std::invalid_argument("step_frf_wideband: baseband count differs from subcarrier count");

    ComplexMatrix cross;
    ComplexMatrix gram;
    for (std::size_t k = 0; k < targets.targets.size(); ++k) {
        const ComplexMatrix c = targets.targets[k] * state.f_bb[k].adjoint();
        const ComplexMatrix g = state.f_bb[k] * state.f_bb[k].adjoint();
        if (k == 0) {
            cross = c;
            gram = g;
        } else {
            cross += c;
            gram += g;
        }
    }
    return detail::frf_from_sums(cross, gram, state.r, state.w, rho);
}

double wideband_objective(const WidebandTargets &targets, const ComplexMatrix &f_rf,
                          const std::vector<ComplexMatrix> &f_bb)
{
    double acc = 0.0;
    for (std::size_t k = 0; k < targets.targets.size(); ++k)
        acc += factorization_objective(targets.targets[k], f_rf, f_bb.at(k));
    return acc;
}

HybridFactors design_wideband(const WidebandTargets &targets, int n_rf, const AdmmConfig &cfg,
                              bool normalize_power, const WidebandObserver &observer)
{
    targets.validate();
    const ComplexMatrix &first = targets.targets.front();
    detail::check_dimensions(first.rows(), first.cols(), n_rf, "design_wideband");
    cfg.validate();

    HybridFactors out;
    out.structure = Structure::fully_connected;

    WidebandState s;
    s.f_rf = project_unit_modulus(random_unit_modulus(first.rows(), n_rf, cfg.seed), cfg.phase_bits);
    s.r = s.f_rf;
    s.w = ComplexMatrix::Zero(first.rows(), n_rf);
    try {
        s.f_bb = baseband_all(s.f_rf, targets);
    } catch (const RankDeficient &e) {
        throw DesignError(std::string("initial baseband solve failed: ") + e.what(), {});
    }

    double previous = wideband_objective(targets, s.r, s.f_bb);
    out.trace.push_back({0, previous, 0.0});
    if (observer)
        observer(0, s);

    for (int t = 1; t <= cfg.max_iters; ++t) {
        try {
            s.f_rf = step_frf_wideband(s, targets, cfg.rho);
            s.f_bb = baseband_all(s.f_rf, targets);
        } catch (const RankDeficient &e) {
            throw DesignError("iteration " + std::to_string(t) + ": " + e.what(), out.trace);
        }
        s.r = project_unit_modulus(s.f_rf + s.w, cfg.phase_bits);
        s.w += s.f_rf - s.r;

        const double objective = wideband_objective(targets, s.r, s.f_bb);
        out.trace.push_back({t, objective, (s.f_rf - s.r).norm()});
        out.iterations_used = t;
        if (observer)
            observer(t, s);
        if (std::abs(previous - objective) < cfg.tau)
            break;
        previous = objective;
    }

    out.f_rf = s.r;
    try {
        out.f_bb = baseband_all(out.f_rf, targets);
    } catch (const RankDeficient &e) {
        throw DesignError(std::string("final baseband solve failed: ") + e.what(), out.trace);
    }
    if (normalize_power) {
        const double scale = std::sqrt(static_cast<double>(first.cols()));
        for (auto &f_bb : out.f_bb) {
            const double norm = (out.f_rf * f_bb).norm();
            if (!(norm > 0.0))
                throw DesignError("power normalization of a zero precoder", out.trace);
            f_bb *= scale / norm;
        }
    }
    out.final_objective = wideband_objective(targets, out.f_rf, out.f_bb);
    return out;
}

} // namespace hybridsim
