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

#ifndef HYBRIDSIM_NUMERICS_HPP
#define HYBRIDSIM_NUMERICS_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hybridsim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Raised when a kernel receives NaN/Inf entries.
class NonFiniteInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a matrix that must be Hermitian positive definite (or full
/// column rank) is numerically singular.
class RankDeficient : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SvdResult {
    ComplexMatrix u;          // m x min(m, n), orthonormal columns
    RealVector singular;      // decreasing
    ComplexMatrix v;          // n x min(m, n), orthonormal columns
};

bool all_finite(const ComplexMatrix &a);

// Thin SVD, A = U diag(S) V^H. No phase normalization is applied to the
// singular vectors.
SvdResult svd(const ComplexMatrix &a);

// Solves A X = B for Hermitian positive definite A via Cholesky.
// Throws RankDeficient when a pivot falls below n * eps * max(diag(A)).
ComplexMatrix solve_hpd(const ComplexMatrix &a, const ComplexMatrix &b);

// log2 det(A) for Hermitian positive definite A, from the Cholesky diagonal.
double logdet_eval(const ComplexMatrix &a);

inline double frobenius_sq(const ComplexMatrix &a) { return a.squaredNorm(); }

} // namespace hybridsim

#endif
