// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "fcapa/errors.hpp"
#include "fcapa/linalg.hpp"
#include "fcapa/rng.hpp"
#include "oracles.hpp"

using namespace fcapa;
using linalg::CMat;

TEST_SUITE("linalg") {

TEST_CASE("lu solve reproduces random right-hand sides") {
    SplitMix64 rng(7);
    for (const int n : {1, 2, 5, 16}) {
        CMat a = oracles::random_cmat(n, n, rng);
        for (int i = 0; i < n; ++i) a(i, i) += 4.0; // keep well conditioned
        const CMat x_true = oracles::random_cmat(n, 3, rng);
        const CMat b = linalg::matmul(a, x_true);
        const CMat x = linalg::solve(a, b);
        CHECK(linalg::max_abs_diff(x, x_true) < 1e-10 * (1.0 + linalg::max_abs(x_true)));
    }
}

TEST_CASE("singular matrix is rejected") {
    CMat a(2, 2);
    a(0, 0) = 1.0;
    a(0, 1) = 2.0;
    a(1, 0) = 2.0;
    a(1, 1) = 4.0;
    CHECK_THROWS_AS(linalg::lu_factor(a), ConditioningError);
}

TEST_CASE("conditioning limit triggers") {
    CMat a = CMat::identity(2);
    a(1, 1) = 1e-20;
    const auto f = linalg::lu_factor(a);
    CHECK(f.pivot_ratio() > 1e14);
    CHECK_THROWS_AS(linalg::lu_solve(f, CMat::identity(2)), ConditioningError);
}

TEST_CASE("adjoint and trace behave") {
    SplitMix64 rng(9);
    const CMat a = oracles::random_cmat(3, 3, rng);
    const CMat ah = linalg::adjoint(a);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(ah(i, j) == std::conj(a(j, i)));
    CHECK(linalg::trace(a) == a(0, 0) + a(1, 1) + a(2, 2));
}

TEST_CASE("jacobi eigensolver oracle recovers known spectrum") {
    // Diagonalizable test case: unitary-similar diagonal matrix.
    CMat d(3, 3);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    d(2, 2) = 5.0;
    // Householder-like unitary from a normalized complex vector.
    SplitMix64 rng(21);
    CMat v = oracles::random_cmat(3, 1, rng);
    double norm = 0.0;
    for (int i = 0; i < 3; ++i) norm += std::norm(v(i, 0));
    for (int i = 0; i < 3; ++i) v(i, 0) /= std::sqrt(norm);
    CMat u = CMat::identity(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) u(i, j) -= 2.0 * v(i, 0) * std::conj(v(j, 0));
    const CMat m = linalg::matmul(linalg::matmul(u, d), linalg::adjoint(u));
    const auto eig = oracles::hermitian_eigenvalues(m);
    REQUIRE(eig.size() == 3);
    CHECK(eig[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(eig[1] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(eig[2] == doctest::Approx(5.0).epsilon(1e-10));
}

} // TEST_SUITE
