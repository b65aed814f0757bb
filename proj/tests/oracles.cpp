// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracles {

using fcapa::linalg::CMat;
using std::complex;

namespace {

double simpson_1d_row(const std::function<double(double, double)>& f, double y, double ax,
                      double bx) {
    return (bx - ax) / 6.0 * (f(ax, y) + 4.0 * f(0.5 * (ax + bx), y) + f(bx, y));
}

// Simpson in y of Simpson-in-x estimates.
double simpson_2d(const std::function<double(double, double)>& f, double ax, double bx, double ay,
                  double by) {
    const double ym = 0.5 * (ay + by);
    return (by - ay) / 6.0 *
           (simpson_1d_row(f, ay, ax, bx) + 4.0 * simpson_1d_row(f, ym, ax, bx) +
            simpson_1d_row(f, by, ax, bx));
}

double adaptive_step(const std::function<double(double, double)>& f, double ax, double bx,
                     double ay, double by, double whole, double tol, int depth) {
    const double xm = 0.5 * (ax + bx);
    const double ym = 0.5 * (ay + by);
    const double q11 = simpson_2d(f, ax, xm, ay, ym);
    const double q12 = simpson_2d(f, xm, bx, ay, ym);
    const double q21 = simpson_2d(f, ax, xm, ym, by);
    const double q22 = simpson_2d(f, xm, bx, ym, by);
    const double refined = q11 + q12 + q21 + q22;
    if (depth <= 0 || std::abs(refined - whole) < 15.0 * tol) return refined;
    const double t = tol / 4.0;
    return adaptive_step(f, ax, xm, ay, ym, q11, t, depth - 1) +
           adaptive_step(f, xm, bx, ay, ym, q12, t, depth - 1) +
           adaptive_step(f, ax, xm, ym, by, q21, t, depth - 1) +
           adaptive_step(f, xm, bx, ym, by, q22, t, depth - 1);
}

} // namespace

double adaptive_integral_2d(const std::function<double(double, double)>& f, double ax, double bx,
                            double ay, double by, double tol) {
    return adaptive_step(f, ax, bx, ay, by, simpson_2d(f, ax, bx, ay, by), tol, 20);
}

std::vector<double> hermitian_eigenvalues(const CMat& m) {
    const int n = m.rows;
    CMat a = m;
    // Cyclic Jacobi: zero out the largest off-diagonal entries with unitary
    // 2x2 rotations until convergence.
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += std::norm(a(i, j));
        if (off < 1e-26) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const complex<double> apq = a(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // Phase to make the pivot real, then a real Jacobi rotation.
                const complex<double> phase = apq / std::abs(apq);
                const double tau = (aqq - app) / (2.0 * std::abs(apq));
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const complex<double> s = t * c * phase;
                for (int k = 0; k < n; ++k) {
                    const complex<double> akp = a(k, p);
                    const complex<double> akq = a(k, q);
                    a(k, p) = c * akp - std::conj(s) * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const complex<double> apk = a(p, k);
                    const complex<double> aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = std::conj(s) * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = a(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

CMat random_cmat(int rows, int cols, fcapa::SplitMix64& rng) {
    CMat m(rows, cols);
    for (auto& v : m.a)
        v = complex<double>(rng.next_uniform(-1.0, 1.0), rng.next_uniform(-1.0, 1.0));
    return m;
}

CMat random_psd(int n, fcapa::SplitMix64& rng, double scale) {
    const CMat a = random_cmat(n, n, rng);
    CMat p = fcapa::linalg::matmul(fcapa::linalg::adjoint(a), a);
    for (auto& v : p.a) v *= scale;
    return p;
}

fcapa::Scenario random_scenario(int users, fcapa::SplitMix64& rng) {
    fcapa::Scenario scn;
    scn.users.resize(users);
    for (auto& u : scn.users) {
        u.position = {rng.next_uniform(-5.0, 5.0), rng.next_uniform(15.0, 30.0),
                      rng.next_uniform(-5.0, 5.0)};
        u.polarization = {0.0, 0.0, 1.0};
        u.noise_var = 5.6e-3;
        u.weight = 1.0 / users;
    }
    return scn;
}

} // namespace oracles
