// SPDX-License-Identifier: Apache-2.0
//
// Small dense complex matrices and an LU solver with partial pivoting.
// Matrix orders here are the user count K (a few dozen at most), so a direct
// factorization is used throughout.

#pragma once

#include <complex>
#include <vector>

namespace fcapa::linalg {

using cdouble = std::complex<double>;

// Row-major dense complex matrix.
struct CMat {
    int rows = 0;
    int cols = 0;
    std::vector<cdouble> a;

    CMat() = default;
    CMat(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c, cdouble{}) {}

    cdouble& operator()(int i, int j) { return a[std::size_t(i) * cols + j]; }
    const cdouble& operator()(int i, int j) const { return a[std::size_t(i) * cols + j]; }

    static CMat identity(int n);
};

CMat matmul(const CMat& x, const CMat& y);
CMat transpose(const CMat& x);
CMat adjoint(const CMat& x);
cdouble trace(const CMat& x);
double max_abs(const CMat& x);
// max |x - y| over entries; matrices must have equal dimensions.
double max_abs_diff(const CMat& x, const CMat& y);

struct LuFactors {
    CMat lu;               // combined L (unit diagonal) and U factors
    std::vector<int> perm; // row permutation
    double min_pivot = 0.0;
    double max_pivot = 0.0;

    // Pivot-ratio conditioning proxy; large values flag near-singularity.
    double pivot_ratio() const;
};

// Factor A = P·L·U. Throws ConditioningError when a pivot underflows to zero.
LuFactors lu_factor(CMat a);

// Solve A·X = B for X given factors of A. Throws ConditioningError when the
// pivot ratio exceeds `condition_limit`.
CMat lu_solve(const LuFactors& f, const CMat& b, double condition_limit = 1e14);

// Convenience wrapper: factor and solve in one call.
CMat solve(const CMat& a, const CMat& b, double condition_limit = 1e14);

} // namespace fcapa::linalg
