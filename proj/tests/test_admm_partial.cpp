// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hybridsim/admm_partial.hpp"
#include "hybridsim/channel.hpp"
#include "hybridsim/digital_baseline.hpp"
#include "test_support.hpp"

using namespace hybridsim;
using hybridsim::testing::random_complex;

namespace {

ComplexMatrix channel_target(std::uint64_t seed, int tx_side, int n_s)
{
    const auto ch = gen_narrowband(seed, {tx_side, 0.5}, {2, 0.5}, {});
    return optimal_factors(ch.matrices.front(), n_s).f_opt;
}

// Euclidean projection onto block-diagonal matrices with unit-modulus
// entries on the blocks; plugged into the generic iteration as an oracle.
detail::Projector block_projector(Eigen::Index n_tx, int n_rf)
{
    const Eigen::Index m = n_tx / n_rf;
    return [m, n_rf](const ComplexMatrix &x) {
        ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
        for (int c = 0; c < n_rf; ++c)
            out.block(c * m, c, m, 1) = project_unit_modulus(ComplexMatrix(x.block(c * m, c, m, 1)));
        return out;
    };
}

PartialState random_partial_state(int n_rf, Eigen::Index m, Eigen::Index n_s, Rng &rng)
{
    PartialState s;
    for (int i = 0; i < n_rf; ++i) {
        s.f_vecs.push_back(random_complex(m, 1, rng));
        s.r_vecs.push_back(project_unit_modulus(random_complex(m, 1, rng)));
        s.w_vecs.push_back(0.3 * random_complex(m, 1, rng));
    }
    s.f_bb = random_complex(n_rf, n_s, rng);
    return s;
}

void check_block_structure(const ComplexMatrix &f_rf, int n_rf)
{
    const Eigen::Index m = f_rf.rows() / n_rf;
    for (Eigen::Index r = 0; r < f_rf.rows(); ++r)
        for (Eigen::Index c = 0; c < f_rf.cols(); ++c) {
            if (r / m == c)
                CHECK(std::abs(std::abs(f_rf(r, c)) - 1.0) <= 1e-12);
            else
                CHECK(f_rf(r, c) == Complex(0.0, 0.0));
        }
}

} // namespace

TEST_CASE("block-diagonal assembly")
{
    SUBCASE("one chain")
    {
        ComplexVector v(3);
        v << 1.0, Complex(0, 1), -1.0;
        const ComplexMatrix f = assemble_block_diag({v});
        CHECK(f.rows() == 3);
        CHECK(f.cols() == 1);
        CHECK(f.col(0) == v);
    }
    SUBCASE("two chains")
    {
        ComplexVector a(2), b(2);
        a << 1.0, Complex(0, 1);
        b << -1.0, Complex(0, -1);
        const ComplexMatrix f = assemble_block_diag({a, b});
        ComplexMatrix expected = ComplexMatrix::Zero(4, 2);
        expected(0, 0) = 1.0;
        expected(1, 0) = Complex(0, 1);
        expected(2, 1) = -1.0;
        expected(3, 1) = Complex(0, -1);
        CHECK(f == expected);
        CHECK((f.adjoint() * f - 2.0 * ComplexMatrix::Identity(2, 2)).norm() < 1e-15);
    }
    SUBCASE("unequal lengths")
    {
        CHECK_THROWS_AS(assemble_block_diag({ComplexVector::Ones(2), ComplexVector::Ones(3)}), std::invalid_argument);
        CHECK_THROWS_AS(assemble_block_diag({}), std::invalid_argument);
    }
}

TEST_CASE("partially-connected design output")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int n_s = 1 + static_cast<int>(seed % 2);
        const int n_rf = n_s == 1 ? 4 : 2;
        const ComplexMatrix target = channel_target(seed, 4, n_s);
        AdmmConfig cfg;
        cfg.seed = seed;
        const auto f = design_partially_connected(target, n_rf, cfg, true);
        CHECK(f.structure == Structure::partially_connected);
        check_block_structure(f.f_rf, n_rf);
        CHECK((f.f_rf.adjoint() * f.f_rf - (16.0 / n_rf) * ComplexMatrix::Identity(n_rf, n_rf)).norm() < 1e-10);
        CHECK(std::abs(f.composite().squaredNorm() - n_s) < 1e-9);
        CHECK(std::abs(f.baseband().squaredNorm() - n_s * n_rf / 16.0) < 1e-9);
    }
}

TEST_CASE("exact block factorization is recovered")
{
    Rng rng(41);
    const int n_rf = 3, m = 4, n_s = 2;
    for (int trial = 0; trial < 5; ++trial) {
        ComplexMatrix target(n_rf * m, n_s);
        for (int i = 0; i < n_rf; ++i) {
            const ComplexMatrix u = project_unit_modulus(random_complex(m, 1, rng));
            ComplexMatrix row = random_complex(1, n_s, rng);
            row /= row.norm();
            target.middleRows(i * m, m) = rng.uniform(0.2, 1.0) * u * row;
        }
        AdmmConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(trial);
        cfg.tau = 0.0;
        cfg.max_iters = 500;
        const auto f = design_partially_connected(target, n_rf, cfg, false);
        CHECK(f.final_objective < 1e-6);
        CHECK(partial_objective(target, {f.f_rf.block(0, 0, m, 1), f.f_rf.block(m, 1, m, 1), f.f_rf.block(2 * m, 2, m, 1)},
                                f.baseband()) == doctest::Approx(f.final_objective).epsilon(1e-9));
    }
}

TEST_CASE("specialized and generic block designs agree on average")
{
    double specialized = 0.0, generic = 0.0;
    const int n_rf = 4;
    for (std::uint64_t i = 0; i < 50; ++i) {
        const ComplexMatrix target = channel_target(900 + i, 4, 2);
        AdmmConfig cfg;
        cfg.seed = i;
        specialized += design_partially_connected(target, n_rf, cfg, false).final_objective;
        generic += detail::design_with_projector(target, n_rf, cfg, false, block_projector(16, n_rf)).final_objective;
    }
    CHECK(std::abs(specialized - generic) <= 0.1 * generic);
}

TEST_CASE("scalar analog update is stationary")
{
    Rng rng(42);
    const double h = 1e-6;
    for (int trial = 0; trial < 50; ++trial) {
        const int n_rf = 2 + trial % 3;
        const Eigen::Index m = 3, n_s = 2;
        const PartialState s = random_partial_state(n_rf, m, n_s, rng);
        const ComplexMatrix target = random_complex(n_rf * m, n_s, rng);
        const double rho = std::pow(10.0, rng.uniform(-1.0, 1.0));
        const auto f = step_partial_frf(s, target, rho);
        for (int i = 0; i < n_rf; ++i)
            for (Eigen::Index j = 0; j < m; ++j) {
                const auto row = target.row(i * m + j);
                const auto bb = s.f_bb.row(i);
                auto term = [&](Complex v) {
                    return (row - v * bb).squaredNorm() + rho * std::norm(v - s.r_vecs[static_cast<std::size_t>(i)](j) +
                                                                          s.w_vecs[static_cast<std::size_t>(i)](j));
                };
                const Complex v = f[static_cast<std::size_t>(i)](j);
                const double gr = (term(v + h) - term(v - h)) / (2 * h);
                const double gi = (term(v + Complex(0, h)) - term(v - Complex(0, h))) / (2 * h);
                CHECK(std::hypot(gr, gi) < 1e-6 * std::max(1.0, term(v)));
            }
    }
}

TEST_CASE("row-wise baseband update is the per-block least-squares solution")
{
    Rng rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        const int n_rf = 2 + trial % 3;
        const Eigen::Index m = 4;
        std::vector<ComplexVector> vecs;
        for (int i = 0; i < n_rf; ++i)
            vecs.push_back(project_unit_modulus(random_complex(m, 1, rng)));
        const ComplexMatrix target = random_complex(n_rf * m, 2, rng);
        const ComplexMatrix f_bb = step_partial_fbb(vecs, target);
        for (int i = 0; i < n_rf; ++i) {
            const ComplexMatrix f = vecs[static_cast<std::size_t>(i)];
            const ComplexMatrix block = target.middleRows(i * m, m);
            const ComplexMatrix oracle = testing::gauss_solve(f.adjoint() * f, f.adjoint() * block);
            CHECK((f_bb.row(i) - oracle).norm() < 1e-10);
        }
        // equivalently the full least-squares solve against the assembled matrix
        CHECK((f_bb - least_squares_fbb(assemble_block_diag(vecs), target)).norm() < 1e-10);
    }
}

TEST_CASE("per-vector invariants during iteration")
{
    const ComplexMatrix target = channel_target(3, 4, 2);
    AdmmConfig cfg;
    cfg.tau = 0.0;
    cfg.seed = 8;
    PartialState prev;
    int calls = 0;
    design_partially_connected(target, 4, cfg, true, [&](int t, const PartialState &s) {
        ++calls;
        for (std::size_t i = 0; i < s.r_vecs.size(); ++i) {
            CHECK((s.r_vecs[i].cwiseAbs().array() - 1.0).abs().maxCoeff() <= 1e-12);
            if (t > 0) {
                const ComplexVector lhs = s.w_vecs[i] - prev.w_vecs[i];
                const ComplexVector rhs = s.f_vecs[i] - s.r_vecs[i];
                CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-14 * std::max(1.0, s.w_vecs[i].norm()));
            }
        }
        prev = s;
    });
    CHECK(calls == cfg.max_iters + 1);
}

TEST_CASE("partially-connected argument checks")
{
    const ComplexMatrix target = channel_target(4, 3, 2); // N_tx = 9
    AdmmConfig cfg;
    CHECK_THROWS_AS(design_partially_connected(target, 2, cfg, true), std::invalid_argument);
    CHECK_NOTHROW(design_partially_connected(target, 3, cfg, true));
    CHECK_THROWS_AS(design_partially_connected(target, 1, cfg, true), std::invalid_argument);
}

TEST_CASE("quantized partially-connected design")
{
    const ComplexMatrix target = channel_target(5, 4, 2);
    AdmmConfig cfg;
    cfg.phase_bits = 2;
    const auto f = design_partially_connected(target, 2, cfg, true);
    check_block_structure(f.f_rf, 2);
    for (Eigen::Index r = 0; r < 16; ++r) {
        const Complex v = f.f_rf(r, r / 8);
        CHECK(std::min(std::abs(v.real()), std::abs(v.imag())) < 1e-12); // on {1, j, -1, -j}
    }
    CHECK(std::abs(f.composite().squaredNorm() - 2.0) < 1e-9);
}
