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

#ifndef HYBRIDSIM_ADMM_PARTIAL_HPP
#define HYBRIDSIM_ADMM_PARTIAL_HPP

#include <functional>
#include <vector>

#include "hybridsim/admm_full.hpp"

namespace hybridsim {

/// Per-chain iterate for the partially-connected array. Chain i drives the
/// rows [i*M, (i+1)*M) of the antenna array, M = N_tx / N_RF.
struct PartialState {
    std::vector<ComplexVector> f_vecs;
    ComplexMatrix f_bb; // N_RF x N_s
    std::vector<ComplexVector> r_vecs;
    std::vector<ComplexVector> w_vecs;
};

using PartialObserver = std::function<void(int iteration, const PartialState &state)>;

/// Block-diagonal N_tx x N_RF analog matrix whose column i holds vecs[i] on
/// its own row block and zeros elsewhere.
ComplexMatrix assemble_block_diag(const std::vector<ComplexVector> &vecs);

/// Scalar-wise analog update for every chain:
///   f_j^i = (target_row F_BB_i^H + rho (r_j^i - w_j^i)) / (||F_BB_i||^2 + rho)
/// where target_row is row (i*M + j) of target and F_BB_i row i of F_BB.
std::vector<ComplexVector> step_partial_frf(const PartialState &state, const ComplexMatrix &target,
                                            double rho);

/// Row-wise baseband update: F_BB_i = ||f^i||^-2 (f^i)^H target_block_i.
ComplexMatrix step_partial_fbb(const std::vector<ComplexVector> &vecs, const ComplexMatrix &target);

/// sum_i ||target_block_i - vecs[i] F_BB_i||^2.
double partial_objective(const ComplexMatrix &target, const std::vector<ComplexVector> &vecs,
                         const ComplexMatrix &f_bb);

/// Partially-connected design. Requires N_tx divisible by n_rf and
/// N_s <= n_rf. With normalize_power, ||F_BB||_F^2 = N_s N_RF / N_tx which
/// makes ||F_RF F_BB||_F^2 = N_s.
HybridFactors design_partially_connected(const ComplexMatrix &target, int n_rf, const AdmmConfig &cfg,
                                         bool normalize_power, const PartialObserver &observer = {});

} // namespace hybridsim

#endif
