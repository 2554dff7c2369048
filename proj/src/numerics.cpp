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

#include "hybridsim/numerics.hpp"

#include <cmath>
#include <limits>

namespace hybridsim {

namespace {

void require_square(const ComplexMatrix &a, const char *what)
{
    if (a.rows() != a.cols() || a.rows() == 0)
        throw std::invalid_argument(std::string(what) + ": matrix must be square and non-empty");
}

void require_hermitian(const ComplexMatrix &a, const char *what)
{
    const double scale = std::max(1.0, a.norm());
    if ((a - a.adjoint()).norm() > 1e-10 * scale)
        throw std::invalid_argument(std::string(what) + ": matrix is not Hermitian");
}

// Cholesky factor with an explicit pivot check; Eigen's LLT only reports
// failure for non-positive pivots, not for vanishing ones.
Eigen::LLT<ComplexMatrix> checked_llt(const ComplexMatrix &a, const char *what)
{
    require_square(a, what);
    if (!all_finite(a))
        throw NonFiniteInput(std::string(what) + ": non-finite entries");
    require_hermitian(a, what);

    Eigen::LLT<ComplexMatrix> llt(a);
    if (llt.info() != Eigen::Success)
        throw RankDeficient(std::string(what) + ": matrix is not positive definite");

    const double max_diag = a.diagonal().real().cwiseAbs().maxCoeff();
    const double floor = static_cast<double>(a.rows()) * std::numeric_limits<double>::epsilon() * max_diag;
    const ComplexMatrix &l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        const double pivot = std::norm(l(i, i));
        if (!(pivot > floor))
            throw RankDeficient(std::string(what) + ": matrix is numerically singular");
    }
    return llt;
}

} // namespace

bool all_finite(const ComplexMatrix &a)
{
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag()))
                return false;
    return true;
}

SvdResult svd(const ComplexMatrix &a)
{
    if (!all_finite(a))
        throw NonFiniteInput("svd: non-finite entries");
    Eigen::JacobiSVD<ComplexMatrix> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

ComplexMatrix solve_hpd(const ComplexMatrix &a, const ComplexMatrix &b)
{
    if (b.rows() != a.rows())
        throw std::invalid_argument("solve_hpd: dimension mismatch");
    if (!all_finite(b))
        throw NonFiniteInput("solve_hpd: non-finite right-hand side");
    return checked_llt(a, "solve_hpd").solve(b);
}

double logdet_eval(const ComplexMatrix &a)
{
    const auto llt = checked_llt(a, "logdet_eval");
    double acc = 0.0;
    const ComplexMatrix &l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        acc += std::log2(l(i, i).real());
    return 2.0 * acc;
}

} // namespace hybridsim
