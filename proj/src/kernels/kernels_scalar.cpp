// SPDX-License-Identifier: Apache-2.0
//
// Scalar reference kernels. These define the semantics; the SIMD variants
// must match them up to floating-point reassociation.

#include "fcapa/kernels.hpp"

namespace fcapa::kernels {
namespace {

void wdot_conj_scalar(const double* w, const double* ar, const double* ai, const double* br,
                      const double* bi, int n, double& out_re, double& out_im) {
    double sre = 0.0, sim = 0.0;
    for (int k = 0; k < n; ++k) {
        // conj(a)*b = (ar*br + ai*bi) + j(ar*bi - ai*br)
        sre += w[k] * (ar[k] * br[k] + ai[k] * bi[k]);
        sim += w[k] * (ar[k] * bi[k] - ai[k] * br[k]);
    }
    out_re = sre;
    out_im = sim;
}

void wdot_scalar(const double* w, const double* ar, const double* ai, const double* br,
                 const double* bi, int n, double& out_re, double& out_im) {
    double sre = 0.0, sim = 0.0;
    for (int k = 0; k < n; ++k) {
        sre += w[k] * (ar[k] * br[k] - ai[k] * bi[k]);
        sim += w[k] * (ar[k] * bi[k] + ai[k] * br[k]);
    }
    out_re = sre;
    out_im = sim;
}

double wnorm2_scalar(const double* w, const double* ar, const double* ai, int n) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += w[k] * (ar[k] * ar[k] + ai[k] * ai[k]);
    return s;
}

void axpy_conj_scalar(double tr, double ti, const double* ar, const double* ai, double* out_re,
                      double* out_im, int n) {
    for (int k = 0; k < n; ++k) {
        // t*conj(a) = (tr*ar + ti*ai) + j(ti*ar - tr*ai)
        out_re[k] += tr * ar[k] + ti * ai[k];
        out_im[k] += ti * ar[k] - tr * ai[k];
    }
}

void add_re_prod_scalar(double cr, double ci, const double* ar, const double* ai, const double* br,
                        const double* bi, double* out, int n) {
    for (int k = 0; k < n; ++k) {
        const double pre = ar[k] * br[k] - ai[k] * bi[k];
        const double pim = ar[k] * bi[k] + ai[k] * br[k];
        out[k] += cr * pre - ci * pim;
    }
}

void add_norm2_scalar(double s, const double* ar, const double* ai, double* out, int n) {
    for (int k = 0; k < n; ++k) out[k] += s * (ar[k] * ar[k] + ai[k] * ai[k]);
}

} // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{"scalar",          wdot_conj_scalar, wdot_scalar,
                                   wnorm2_scalar,     axpy_conj_scalar, add_re_prod_scalar,
                                   add_norm2_scalar};
    return table;
}

} // namespace fcapa::kernels
