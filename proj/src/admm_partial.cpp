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

#include "hybridsim/admm_partial.hpp"

#include <cmath>
#include <string>

namespace hybridsim {

namespace {

Eigen::Index block_length(const ComplexMatrix &target, std::size_t n_chains)
{
    return target.rows() / static_cast<Eigen::Index>(n_chains);
}

void check_state(const std::vector<ComplexVector> &vecs, const ComplexMatrix &target)
{
    if (vecs.empty())
        throw std::invalid_argument("partial design: no RF chains");
    const Eigen::Index m = vecs.front().size();
    for (const auto &v : vecs)
        if (v.size() != m)
            throw std::invalid_argument("partial design: unequal subarray lengths");
    if (m * static_cast<Eigen::Index>(vecs.size()) != target.rows())
        throw std::invalid_argument("partial design: subarrays do not cover the target rows");
}

double primal_residual(const PartialState &s)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < s.f_vecs.size(); ++i)
        acc += (s.f_vecs[i] - s.r_vecs[i]).squaredNorm();
    return std::sqrt(acc);
}

} // namespace

ComplexMatrix assemble_block_diag(const std::vector<ComplexVector> &vecs)
{
    if (vecs.empty())
        throw std::invalid_argument("assemble_block_diag: no vectors");
    const Eigen::Index m = vecs.front().size();
    for (const auto &v : vecs)
        if (v.size() != m)
            throw std::invalid_argument("assemble_block_diag: unequal vector lengths");

    const auto n = static_cast<Eigen::Index>(vecs.size());
    ComplexMatrix out = ComplexMatrix::Zero(m * n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        out.block(i * m, i, m, 1) = vecs[static_cast<std::size_t>(i)];
    return out;
}

std::vector<ComplexVector> step_partial_frf(const PartialState &state, const ComplexMatrix &target,
                                            double rho)
{
    check_state(state.f_vecs, target);
    const Eigen::Index m = block_length(target, state.f_vecs.size());
    std::vector<ComplexVector> out(state.f_vecs.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto row = state.f_bb.row(static_cast<Eigen::Index>(i));
        const double denom = row.squaredNorm() + rho;
        const ComplexVector num = target.middleRows(static_cast<Eigen::Index>(i) * m, m) * row.adjoint() +
                                  rho * (state.r_vecs[i] - state.w_vecs[i]);
        out[i] = num / denom;
    }
    return out;
}

ComplexMatrix step_partial_fbb(const std::vector<ComplexVector> &vecs, const ComplexMatrix &target)
{
    check_state(vecs, target);
    const Eigen::Index m = block_length(target, vecs.size());
    ComplexMatrix f_bb(static_cast<Eigen::Index>(vecs.size()), target.cols());
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        const double energy = vecs[i].squaredNorm();
        if (!(energy > 0.0))
            throw RankDeficient("step_partial_fbb: analog vector " + std::to_string(i) + " vanished");
        f_bb.row(static_cast<Eigen::Index>(i)) =
            (vecs[i].adjoint() * target.middleRows(static_cast<Eigen::Index>(i) * m, m)) / energy;
    }
    return f_bb;
}

double partial_objective(const ComplexMatrix &target, const std::vector<ComplexVector> &vecs,
                         const ComplexMatrix &f_bb)
{
    check_state(vecs, target);
    const Eigen::Index m = block_length(target, vecs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        const auto idx = static_cast<Eigen::Index>(i);
        acc += (target.middleRows(idx * m, m) - vecs[i] * f_bb.row(idx)).squaredNorm();
    }
    return acc;
}

HybridFactors design_partially_connected(const ComplexMatrix &target, int n_rf, const AdmmConfig &cfg,
                                         bool normalize_power, const PartialObserver &observer)
{
    detail::check_dimensions(target.rows(), target.cols(), n_rf, "design_partially_connected");
    if (target.rows() % n_rf != 0)
        throw std::invalid_argument("design_partially_connected: N_tx=" + std::to_string(target.rows()) +
                                    " is not divisible by N_RF=" + std::to_string(n_rf));
    cfg.validate();

    const Eigen::Index m = target.rows() / n_rf;
    const auto chains = static_cast<std::size_t>(n_rf);

    PartialState s;
    const ComplexMatrix start = project_unit_modulus(random_unit_modulus(m, n_rf, cfg.seed), cfg.phase_bits);
    for (std::size_t i = 0; i < chains; ++i)
        s.f_vecs.push_back(start.col(static_cast<Eigen::Index>(i)));
    s.r_vecs = s.f_vecs;
    s.w_vecs.assign(chains, ComplexVector::Zero(m));

    HybridFactors out;
    out.structure = Structure::partially_connected;
    try {
        s.f_bb = step_partial_fbb(s.f_vecs, target);
    } catch (const RankDeficient &e) {
        throw DesignError(std::string("initial baseband solve failed: ") + e.what(), {});
    }

    double previous = partial_objective(target, s.r_vecs, s.f_bb);
    out.trace.push_back({0, previous, 0.0});
    if (observer)
        observer(0, s);

    for (int t = 1; t <= cfg.max_iters; ++t) {
        try {
            s.f_vecs = step_partial_frf(s, target, cfg.rho);
            s.f_bb = step_partial_fbb(s.f_vecs, target);
        } catch (const RankDeficient &e) {
            throw DesignError("iteration " + std::to_string(t) + ": " + e.what(), out.trace);
        }
        for (std::size_t i = 0; i < chains; ++i) {
            s.r_vecs[i] = project_unit_modulus(ComplexMatrix(s.f_vecs[i] + s.w_vecs[i]), cfg.phase_bits);
            s.w_vecs[i] += s.f_vecs[i] - s.r_vecs[i];
        }

        const double objective = partial_objective(target, s.r_vecs, s.f_bb);
        out.trace.push_back({t, objective, primal_residual(s)});
        out.iterations_used = t;
        if (observer)
            observer(t, s);
        if (std::abs(previous - objective) < cfg.tau)
            break;
        previous = objective;
    }

    out.f_rf = assemble_block_diag(s.r_vecs);
    // blkdiag(||r^i||^-2) F_RF^H target, i.e. the row-wise update at r.
    ComplexMatrix f_bb = step_partial_fbb(s.r_vecs, target);
    if (normalize_power) {
        const double norm = f_bb.norm();
        if (!(norm > 0.0))
            throw DesignError("power normalization of a zero precoder", out.trace);
        f_bb *= std::sqrt(static_cast<double>(target.cols()) * n_rf / static_cast<double>(target.rows())) / norm;
    }
    out.f_bb.push_back(std::move(f_bb));
    out.final_objective = factorization_objective(target, out.f_rf, out.f_bb.front());
    return out;
}

} // namespace hybridsim
