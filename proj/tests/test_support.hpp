// SPDX-License-Identifier: Apache-2.0
// Shared helpers for the unit and acceptance tests.

#ifndef HYBRIDSIM_TEST_SUPPORT_HPP
#define HYBRIDSIM_TEST_SUPPORT_HPP

#include <cmath>
#include <cstdint>

#include "hybridsim/numerics.hpp"
#include "hybridsim/rng.hpp"

namespace hybridsim::testing {

inline ComplexMatrix random_complex(Eigen::Index rows, Eigen::Index cols, Rng &rng)
{
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) {
            const double re = rng.normal();
            const double im = rng.normal();
            m(i, j) = {re, im};
        }
    return m;
}

inline ComplexMatrix random_hpd(Eigen::Index n, Rng &rng)
{
    const ComplexMatrix m = random_complex(n, n, rng);
    return m.adjoint() * m + ComplexMatrix::Identity(n, n);
}

inline ComplexMatrix random_unitary(Eigen::Index n, Rng &rng)
{
    Eigen::HouseholderQR<ComplexMatrix> qr(random_complex(n, n, rng));
    return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

// Gaussian elimination with partial pivoting; independent of the Cholesky
// path used by solve_hpd.
inline ComplexMatrix gauss_solve(ComplexMatrix a, ComplexMatrix b)
{
    const Eigen::Index n = a.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index piv = k;
        for (Eigen::Index i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k)))
                piv = i;
        a.row(k).swap(a.row(piv));
        b.row(k).swap(b.row(piv));
        for (Eigen::Index i = k + 1; i < n; ++i) {
            const Complex f = a(i, k) / a(k, k);
            a.row(i) -= f * a.row(k);
            b.row(i) -= f * b.row(k);
        }
    }
    ComplexMatrix x(n, b.cols());
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        Eigen::RowVectorXcd acc = b.row(i);
        for (Eigen::Index j = i + 1; j < n; ++j)
            acc -= a(i, j) * x.row(j);
        x.row(i) = acc / a(i, i);
    }
    return x;
}

inline double rel_err(const ComplexMatrix &a, const ComplexMatrix &b)
{
    return (a - b).norm() / std::max(1.0, b.norm());
}

} // namespace hybridsim::testing

#endif
