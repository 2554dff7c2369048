// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "hybridsim/numerics.hpp"
#include "test_support.hpp"

using namespace hybridsim;
using hybridsim::testing::random_complex;

TEST_CASE("svd of a diagonal matrix")
{
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = 3.0;
    a(1, 1) = 1.0;
    const auto d = svd(a);
    CHECK(d.singular(0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(d.singular(1) == doctest::Approx(1.0).epsilon(1e-14));
    // identity up to per-column unit phases
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            CHECK(std::abs(d.u(i, j)) == doctest::Approx(i == j ? 1.0 : 0.0));
            CHECK(std::abs(d.v(i, j)) == doctest::Approx(i == j ? 1.0 : 0.0));
        }
}

TEST_CASE("svd of the zero matrix")
{
    const auto d = svd(ComplexMatrix::Zero(2, 2));
    CHECK(d.singular(0) == 0.0);
    CHECK(d.singular(1) == 0.0);
}

TEST_CASE("svd reconstruction and orthonormality")
{
    Rng rng(11);
    const ComplexMatrix a = random_complex(6, 4, rng);
    const auto d = svd(a);
    CHECK((d.u.adjoint() * d.u - ComplexMatrix::Identity(4, 4)).norm() < 1e-12);
    CHECK((d.v.adjoint() * d.v - ComplexMatrix::Identity(4, 4)).norm() < 1e-12);
    const ComplexMatrix back = d.u * d.singular.cast<Complex>().asDiagonal() * d.v.adjoint();
    CHECK((a - back).norm() / a.norm() < 1e-10);
    for (Eigen::Index i = 1; i < d.singular.size(); ++i)
        CHECK(d.singular(i) <= d.singular(i - 1));
}

TEST_CASE("svd round trip over random shapes")
{
    Rng rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        const auto rows = 1 + static_cast<Eigen::Index>(rng.uniform() * 12);
        const auto cols = 1 + static_cast<Eigen::Index>(rng.uniform() * 12);
        const double scale = std::pow(10.0, rng.uniform(-3.0, 3.0));
        const ComplexMatrix a = scale * random_complex(rows, cols, rng);
        const auto d = svd(a);
        const ComplexMatrix back = d.u * d.singular.cast<Complex>().asDiagonal() * d.v.adjoint();
        CHECK((a - back).norm() <= 1e-10 * std::max(1.0, a.norm()));
    }
}

TEST_CASE("svd rejects non-finite input")
{
    ComplexMatrix a = ComplexMatrix::Identity(3, 3);
    a(1, 2) = {std::numeric_limits<double>::quiet_NaN(), 0.0};
    CHECK_THROWS_AS(svd(a), NonFiniteInput);
    a(1, 2) = {0.0, std::numeric_limits<double>::infinity()};
    CHECK_THROWS_AS(svd(a), NonFiniteInput);
}

TEST_CASE("solve_hpd trivial systems")
{
    Rng rng(13);
    const ComplexMatrix b = random_complex(3, 2, rng);
    CHECK((solve_hpd(ComplexMatrix::Identity(3, 3), b) - b).norm() < 1e-15);

    ComplexMatrix two = 2.0 * ComplexMatrix::Identity(2, 2);
    ComplexMatrix rhs(2, 1);
    rhs << 4.0, 2.0;
    const ComplexMatrix x = solve_hpd(two, rhs);
    CHECK(std::abs(x(0, 0) - Complex(2.0, 0.0)) < 1e-15);
    CHECK(std::abs(x(1, 0) - Complex(1.0, 0.0)) < 1e-15);
}

TEST_CASE("solve_hpd agrees with Gaussian elimination")
{
    Rng rng(14);
    for (int trial = 0; trial < 50; ++trial) {
        const auto n = 1 + static_cast<Eigen::Index>(rng.uniform() * 8);
        const ComplexMatrix a = testing::random_hpd(n, rng);
        const ComplexMatrix b = random_complex(n, 3, rng);
        const ComplexMatrix x = solve_hpd(a, b);
        CHECK((a * x - b).norm() / b.norm() < 1e-10);
        CHECK(testing::rel_err(x, testing::gauss_solve(a, b)) < 1e-10);
    }
}

TEST_CASE("solve_hpd recovers X from A X")
{
    Rng rng(15);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix a = testing::random_hpd(6, rng);
        const ComplexMatrix x = random_complex(6, 2, rng);
        CHECK((solve_hpd(a, a * x) - x).norm() / x.norm() < 1e-9);
    }
}

TEST_CASE("solve_hpd reports rank deficiency")
{
    Rng rng(16);
    const ComplexMatrix m = random_complex(4, 2, rng);
    const ComplexMatrix gram = m * m.adjoint(); // rank 2 in 4 dimensions
    CHECK_THROWS_AS(solve_hpd(gram, random_complex(4, 1, rng)), RankDeficient);
    CHECK_THROWS_AS(solve_hpd(-ComplexMatrix::Identity(2, 2), ComplexMatrix::Ones(2, 1)), RankDeficient);
    CHECK_THROWS_AS(solve_hpd(ComplexMatrix::Zero(3, 3), ComplexMatrix::Ones(3, 1)), RankDeficient);
}

TEST_CASE("solve_hpd argument checks")
{
    CHECK_THROWS_AS(solve_hpd(ComplexMatrix::Identity(2, 2), ComplexMatrix::Ones(3, 1)), std::invalid_argument);
    ComplexMatrix skew = ComplexMatrix::Identity(2, 2);
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(solve_hpd(skew, ComplexMatrix::Ones(2, 1)), std::invalid_argument);
}

TEST_CASE("logdet_eval closed forms")
{
    CHECK(logdet_eval(ComplexMatrix::Identity(3, 3)) == doctest::Approx(0.0));
    CHECK(logdet_eval(1.5 * ComplexMatrix::Identity(2, 2)) == doctest::Approx(1.169925001442312).epsilon(1e-14));
}

TEST_CASE("logdet_eval matches the eigenvalue product")
{
    Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const ComplexMatrix a = testing::random_hpd(4, rng);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(a);
        double oracle = 0.0;
        for (Eigen::Index i = 0; i < 4; ++i)
            oracle += std::log2(eig.eigenvalues()(i));
        CHECK(std::abs(logdet_eval(a) - oracle) <= 1e-10 * std::abs(oracle));
    }
}

TEST_CASE("logdet_eval is additive over block diagonals")
{
    Rng rng(18);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix a = testing::random_hpd(3, rng);
        const ComplexMatrix b = testing::random_hpd(5, rng);
        ComplexMatrix blk = ComplexMatrix::Zero(8, 8);
        blk.topLeftCorner(3, 3) = a;
        blk.bottomRightCorner(5, 5) = b;
        CHECK(std::abs(logdet_eval(a) + logdet_eval(b) - logdet_eval(blk)) < 1e-10);
    }
}

TEST_CASE("logdet_eval rejects non-HPD input")
{
    ComplexMatrix a = ComplexMatrix::Identity(2, 2);
    a(1, 1) = -1.0;
    CHECK_THROWS_AS(logdet_eval(a), RankDeficient);
}
