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

#ifndef HYBRIDSIM_ADMM_OFDM_HPP
#define HYBRIDSIM_ADMM_OFDM_HPP

#include <functional>
#include <vector>

#include "hybridsim/admm_full.hpp"

namespace hybridsim {

/// Per-subcarrier targets F_opt[k] (or W_opt[k] for the combiner); all share
/// one N_tx x N_s shape.
struct WidebandTargets {
    std::vector<ComplexMatrix> targets;

    void validate() const;
    int subcarriers() const { return static_cast<int>(targets.size()); }
};

/// Shared analog matrix and its auxiliary/dual copies with one baseband
/// matrix per subcarrier.
struct WidebandState {
    ComplexMatrix f_rf;
    std::vector<ComplexMatrix> f_bb;
    ComplexMatrix r;
    ComplexMatrix w;
};

using WidebandObserver = std::function<void(int iteration, const WidebandState &state)>;

/// Analog update with subcarrier sums:
///   [sum_k F_opt[k] F_BB[k]^H + rho (R - W)] (sum_k F_BB[k] F_BB[k]^H + rho I)^-1
ComplexMatrix step_frf_wideband(const WidebandState &state, const WidebandTargets &targets, double rho);

double wideband_objective(const WidebandTargets &targets, const ComplexMatrix &f_rf,
                          const std::vector<ComplexMatrix> &f_bb);

/// One analog matrix shared by all subcarriers, one baseband matrix per
/// subcarrier. With normalize_power every F_RF F_BB[k] is scaled to
/// Frobenius norm^2 = N_s independently. K = 1 runs the same iteration as
/// design_fully_connected.
HybridFactors design_wideband(const WidebandTargets &targets, int n_rf, const AdmmConfig &cfg,
                              bool normalize_power, const WidebandObserver &observer = {});

} // namespace hybridsim

#endif
