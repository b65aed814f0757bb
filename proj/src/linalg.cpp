// SPDX-License-Identifier: Apache-2.0

#include "fcapa/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fcapa/errors.hpp"

namespace fcapa::linalg {

CMat CMat::identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMat matmul(const CMat& x, const CMat& y) {
    if (x.cols != y.rows) throw DimensionError("matmul: inner dimensions differ");
    CMat out(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int k = 0; k < x.cols; ++k) {
            const cdouble xv = x(i, k);
            if (xv == cdouble{}) continue;
            for (int j = 0; j < y.cols; ++j) out(i, j) += xv * y(k, j);
        }
    }
    return out;
}

CMat transpose(const CMat& x) {
    CMat out(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) out(j, i) = x(i, j);
    return out;
}

CMat adjoint(const CMat& x) {
    CMat out(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) out(j, i) = std::conj(x(i, j));
    return out;
}

cdouble trace(const CMat& x) {
    cdouble t{};
    const int n = std::min(x.rows, x.cols);
    for (int i = 0; i < n; ++i) t += x(i, i);
    return t;
}

double max_abs(const CMat& x) {
    double m = 0.0;
    for (const auto& v : x.a) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(const CMat& x, const CMat& y) {
    if (x.rows != y.rows || x.cols != y.cols)
        throw DimensionError("max_abs_diff: dimensions differ");
    double m = 0.0;
    for (std::size_t i = 0; i < x.a.size(); ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
    return m;
}

double LuFactors::pivot_ratio() const {
    if (min_pivot <= 0.0) return std::numeric_limits<double>::infinity();
    return max_pivot / min_pivot;
}

LuFactors lu_factor(CMat a) {
    if (a.rows != a.cols) throw DimensionError("lu_factor: matrix must be square");
    const int n = a.rows;
    LuFactors f;
    f.perm.resize(n);
    for (int i = 0; i < n; ++i) f.perm[i] = i;

    double min_p = std::numeric_limits<double>::infinity();
    double max_p = 0.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(a(col, col));
        for (int r = col + 1; r < n; ++r) {
            const double mag = std::abs(a(r, col));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best == 0.0) throw ConditioningError("lu_factor: exactly singular matrix");
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
            std::swap(f.perm[col], f.perm[pivot]);
        }
        min_p = std::min(min_p, best);
        max_p = std::max(max_p, best);
        const cdouble inv = 1.0 / a(col, col);
        for (int r = col + 1; r < n; ++r) {
            const cdouble l = a(r, col) * inv;
            a(r, col) = l;
            for (int j = col + 1; j < n; ++j) a(r, j) -= l * a(col, j);
        }
    }
    f.lu = std::move(a);
    f.min_pivot = min_p;
    f.max_pivot = max_p;
    return f;
}

CMat lu_solve(const LuFactors& f, const CMat& b, double condition_limit) {
    const int n = f.lu.rows;
    if (b.rows != n) throw DimensionError("lu_solve: right-hand side rows differ");
    if (f.pivot_ratio() > condition_limit)
        throw ConditioningError("lu_solve: pivot ratio exceeds conditioning limit");

    CMat x(n, b.cols);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < b.cols; ++j) x(i, j) = b(f.perm[i], j);

    // Forward substitution (unit lower-triangular part).
    for (int i = 1; i < n; ++i)
        for (int k = 0; k < i; ++k) {
            const cdouble l = f.lu(i, k);
            if (l == cdouble{}) continue;
            for (int j = 0; j < x.cols; ++j) x(i, j) -= l * x(k, j);
        }
    // Back substitution.
    for (int i = n - 1; i >= 0; --i) {
        for (int k = i + 1; k < n; ++k) {
            const cdouble u = f.lu(i, k);
            if (u == cdouble{}) continue;
            for (int j = 0; j < x.cols; ++j) x(i, j) -= u * x(k, j);
        }
        const cdouble d = 1.0 / f.lu(i, i);
        for (int j = 0; j < x.cols; ++j) x(i, j) *= d;
    }
    return x;
}

CMat solve(const CMat& a, const CMat& b, double condition_limit) {
    return lu_solve(lu_factor(a), b, condition_limit);
}

} // namespace fcapa::linalg
