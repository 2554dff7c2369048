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

#ifndef HYBRIDSIM_ADMM_FULL_HPP
#define HYBRIDSIM_ADMM_FULL_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hybridsim/numerics.hpp"

namespace hybridsim {

struct AdmmConfig {
    double rho = 1.0;
    int max_iters = 30;
    double tau = 1e-3;
    std::optional<int> phase_bits; // unset: continuous phase shifters
    std::uint64_t seed = 0;        // analog initialization

    void validate() const;
};

/// Iterate of the splitting: analog estimate, baseband estimate, the
/// unit-modulus auxiliary copy of the analog matrix and the scaled dual.
struct AdmmState {
    ComplexMatrix f_rf;
    ComplexMatrix f_bb;
    ComplexMatrix r;
    ComplexMatrix w;
};

enum class Structure { fully_connected, partially_connected };

const char *to_string(Structure s);

struct TraceEntry {
    int iteration = 0;          // 0 is the initial point
    double objective = 0.0;     // f(R, F_BB) at this iterate
    double primal_residual = 0.0; // ||F_RF - R||_F
};

/// Output of a design run. Narrowband designs carry a single baseband matrix;
/// wideband designs carry one per subcarrier.
struct HybridFactors {
    ComplexMatrix f_rf;
    std::vector<ComplexMatrix> f_bb;
    Structure structure = Structure::fully_connected;
    std::vector<TraceEntry> trace;
    int iterations_used = 0;
    double final_objective = 0.0; // sum_k ||F_target[k] - F_RF F_BB[k]||_F^2 of the returned factors

    const ComplexMatrix &baseband() const { return f_bb.front(); }
    ComplexMatrix composite(std::size_t k = 0) const { return f_rf * f_bb.at(k); }
};

/// Thrown when a design cannot be completed; carries the trace up to the
/// failure point.
class DesignError : public std::runtime_error {
public:
    DesignError(const std::string &what, std::vector<TraceEntry> trace)
        : std::runtime_error(what), trace_(std::move(trace)) {}
    const std::vector<TraceEntry> &trace() const { return trace_; }

private:
    std::vector<TraceEntry> trace_;
};

/// Called after every iteration (and once with iteration 0 for the initial
/// point) with the current state.
using IterationObserver = std::function<void(int iteration, const AdmmState &state)>;

/// Elementwise projection onto unit-modulus entries. Continuous mode maps
/// x to x/|x| and 0 to 1. With phase_bits = b the phase is rounded to the
/// nearest point of {2 pi k / 2^b}; exact ties go to the smaller angle.
ComplexMatrix project_unit_modulus(const ComplexMatrix &x, std::optional<int> phase_bits = std::nullopt);
Complex project_unit_modulus(Complex x, std::optional<int> phase_bits = std::nullopt);

/// rows x cols matrix of unit-modulus entries with phases uniform on
/// [0, 2 pi), drawn in row-major order from Rng(seed).
ComplexMatrix random_unit_modulus(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);

/// argmin_B ||target - f_rf B||_F = (f_rf^H f_rf)^-1 f_rf^H target.
ComplexMatrix least_squares_fbb(const ComplexMatrix &f_rf, const ComplexMatrix &target);

/// Minimizer of the augmented Lagrangian over the analog matrix:
///   [target F_BB^H + rho (R - W)] (F_BB F_BB^H + rho I)^-1
ComplexMatrix step_frf(const AdmmState &state, const ComplexMatrix &target, double rho);

double factorization_objective(const ComplexMatrix &target, const ComplexMatrix &f_rf,
                               const ComplexMatrix &f_bb);

/// Fully-connected hybrid factorization of target (N_tx x N_s) with n_rf
/// analog chains. Precoders use normalize_power = true so that
/// ||F_RF F_BB||_F^2 = N_s; combiners skip the scaling.
HybridFactors design_fully_connected(const ComplexMatrix &target, int n_rf, const AdmmConfig &cfg,
                                     bool normalize_power, const IterationObserver &observer = {});

/// CSV with header "iteration,objective,primal_residual".
void write_trace_csv(std::ostream &out, const std::vector<TraceEntry> &trace);

namespace detail {

using Projector = std::function<ComplexMatrix(const ComplexMatrix &)>;

// Same iteration with an arbitrary projection for the auxiliary variable.
// The analog initialization is the projected random start.
HybridFactors design_with_projector(const ComplexMatrix &target, int n_rf, const AdmmConfig &cfg,
                                    bool normalize_power, const Projector &project,
                                    const IterationObserver &observer = {});

void check_dimensions(Eigen::Index n_tx, Eigen::Index n_s, int n_rf, const char *who);

// Closed-form analog update from the accumulated sums
//   cross = sum_k target[k] F_BB[k]^H,  gram = sum_k F_BB[k] F_BB[k]^H.
ComplexMatrix frf_from_sums(const ComplexMatrix &cross, const ComplexMatrix &gram,
                            const ComplexMatrix &r, const ComplexMatrix &w, double rho);

} // namespace detail

} // namespace hybridsim

#endif
