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

#ifndef HYBRIDSIM_DIGITAL_BASELINE_HPP
#define HYBRIDSIM_DIGITAL_BASELINE_HPP

#include <cmath>
#include <vector>

#include "hybridsim/numerics.hpp"

namespace hybridsim {

/// Leading singular subspaces of a channel: the fully digital precoder and
/// combiner with equal power per stream.
struct OptimalFactors {
    ComplexMatrix f_opt;   // N_tx x N_s, orthonormal columns
    ComplexMatrix w_opt;   // N_rx x N_s, orthonormal columns
    RealVector singular_values;
};

OptimalFactors optimal_factors(const ComplexMatrix &h, int n_s);

/// Achievable rate in bits/s/Hz of the link H with composite precoder F and
/// composite combiner Wc under Gaussian signalling:
///
///   log2 det(I + snr/N_s (Wc^H Wc)^-1 Wc^H H F F^H H^H Wc)
///
/// snr is the linear ratio of received power to noise variance. The combiner
/// must have full column rank (smallest singular value at least 1e-10 times
/// the largest); otherwise DegenerateCombiner is thrown.
double spectral_efficiency(const ComplexMatrix &h, const ComplexMatrix &f,
                           const ComplexMatrix &wc, double snr, int n_s);

class DegenerateCombiner : public RankDeficient {
public:
    using RankDeficient::RankDeficient;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

} // namespace hybridsim

#endif
