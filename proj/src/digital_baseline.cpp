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

#include "hybridsim/digital_baseline.hpp"

#include <algorithm>
#include <string>

namespace hybridsim {

OptimalFactors optimal_factors(const ComplexMatrix &h, int n_s)
{
    if (n_s < 1 || n_s > std::min(h.rows(), h.cols()))
        throw std::invalid_argument("optimal_factors: n_s must lie in [1, min(N_rx, N_tx)], got " +
                                    std::to_string(n_s));
    const SvdResult dec = svd(h);
    return {dec.v.leftCols(n_s), dec.u.leftCols(n_s), dec.singular};
}

double spectral_efficiency(const ComplexMatrix &h, const ComplexMatrix &f,
                           const ComplexMatrix &wc, double snr, int n_s)
{
    if (f.rows() != h.cols() || wc.rows() != h.rows())
        throw std::invalid_argument("spectral_efficiency: precoder/combiner rows do not match channel");
    if (f.cols() != n_s || wc.cols() != n_s)
        throw std::invalid_argument("spectral_efficiency: precoder/combiner must have n_s columns");
    if (!(snr >= 0.0) || !std::isfinite(snr))
        throw std::invalid_argument("spectral_efficiency: snr must be finite and non-negative");

    const RealVector s = svd(wc).singular;
    if (s.size() == 0 || !(s(s.size() - 1) >= 1e-10 * s(0)) || s(0) == 0.0)
        throw DegenerateCombiner("spectral_efficiency: combiner is rank deficient");

    // Whiten with the Cholesky factor of R_n = Wc^H Wc. The whitened matrix
    // is similar to the one in the determinant and Hermitian by construction.
    const ComplexMatrix rn = wc.adjoint() * wc;
    Eigen::LLT<ComplexMatrix> llt(rn);
    if (llt.info() != Eigen::Success)
        throw DegenerateCombiner("spectral_efficiency: combiner Gram matrix is not positive definite");
    const ComplexMatrix m = wc.adjoint() * h * f;
    const ComplexMatrix g = llt.matrixL().solve(m);
    ComplexMatrix inner = ComplexMatrix::Identity(n_s, n_s) + (snr / n_s) * (g * g.adjoint());
    inner = 0.5 * (inner + inner.adjoint()).eval();
    return logdet_eval(inner);
}

} // namespace hybridsim
