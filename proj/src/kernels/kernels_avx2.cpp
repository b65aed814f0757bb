// SPDX-License-Identifier: Apache-2.0
//
// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma on x86-64 only; dispatch.cpp guards selection at runtime.

#include "fcapa/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace fcapa::kernels {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void wdot_conj_avx2(const double* w, const double* ar, const double* ai, const double* br,
                    const double* bi, int n, double& out_re, double& out_im) {
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    int k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d vw = _mm256_loadu_pd(w + k);
        const __m256d var = _mm256_loadu_pd(ar + k);
        const __m256d vai = _mm256_loadu_pd(ai + k);
        const __m256d vbr = _mm256_loadu_pd(br + k);
        const __m256d vbi = _mm256_loadu_pd(bi + k);
        const __m256d pre = _mm256_fmadd_pd(var, vbr, _mm256_mul_pd(vai, vbi));
        const __m256d pim = _mm256_fmsub_pd(var, vbi, _mm256_mul_pd(vai, vbr));
        acc_re = _mm256_fmadd_pd(vw, pre, acc_re);
        acc_im = _mm256_fmadd_pd(vw, pim, acc_im);
    }
    double sre = hsum(acc_re), sim = hsum(acc_im);
    for (; k < n; ++k) {
        sre += w[k] * (ar[k] * br[k] + ai[k] * bi[k]);
        sim += w[k] * (ar[k] * bi[k] - ai[k] * br[k]);
    }
    out_re = sre;
    out_im = sim;
}

void wdot_avx2(const double* w, const double* ar, const double* ai, const double* br,
               const double* bi, int n, double& out_re, double& out_im) {
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    int k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d vw = _mm256_loadu_pd(w + k);
        const __m256d var = _mm256_loadu_pd(ar + k);
        const __m256d vai = _mm256_loadu_pd(ai + k);
        const __m256d vbr = _mm256_loadu_pd(br + k);
        const __m256d vbi = _mm256_loadu_pd(bi + k);
        const __m256d pre = _mm256_fmsub_pd(var, vbr, _mm256_mul_pd(vai, vbi));
        const __m256d pim = _mm256_fmadd_pd(var, vbi, _mm256_mul_pd(vai, vbr));
        acc_re = _mm256_fmadd_pd(vw, pre, acc_re);
        acc_im = _mm256_fmadd_pd(vw, pim, acc_im);
    }
    double sre = hsum(acc_re), sim = hsum(acc_im);
    for (; k < n; ++k) {
        sre += w[k] * (ar[k] * br[k] - ai[k] * bi[k]);
        sim += w[k] * (ar[k] * bi[k] + ai[k] * br[k]);
    }
    out_re = sre;
    out_im = sim;
}

double wnorm2_avx2(const double* w, const double* ar, const double* ai, int n) {
    __m256d acc = _mm256_setzero_pd();
    int k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d vw = _mm256_loadu_pd(w + k);
        const __m256d var = _mm256_loadu_pd(ar + k);
        const __m256d vai = _mm256_loadu_pd(ai + k);
        const __m256d mag = _mm256_fmadd_pd(var, var, _mm256_mul_pd(vai, vai));
        acc = _mm256_fmadd_pd(vw, mag, acc);
    }
    double s = hsum(acc);
    for (; k < n; ++k) s += w[k] * (ar[k] * ar[k] + ai[k] * ai[k]);
    return s;
}

void axpy_conj_avx2(double tr, double ti, const double* ar, const double* ai, double* out_re,
                    double* out_im, int n) {
    const __m256d vtr = _mm256_set1_pd(tr);
    const __m256d vti = _mm256_set1_pd(ti);
    int k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d var = _mm256_loadu_pd(ar + k);
        const __m256d vai = _mm256_loadu_pd(ai + k);
        __m256d vor = _mm256_loadu_pd(out_re + k);
        __m256d voi = _mm256_loadu_pd(out_im + k);
        vor = _mm256_add_pd(vor, _mm256_fmadd_pd(vtr, var, _mm256_mul_pd(vti, vai)));
        voi = _mm256_add_pd(voi, _mm256_fmsub_pd(vti, var, _mm256_mul_pd(vtr, vai)));
        _mm256_storeu_pd(out_re + k, vor);
        _mm256_storeu_pd(out_im + k, voi);
    }
    for (; k < n; ++k) {
        out_re[k] += tr * ar[k] + ti * ai[k];
        out_im[k] += ti * ar[k] - tr * ai[k];
    }
}

void add_re_prod_avx2(double cr, double ci, const double* ar, const double* ai, const double* br,
                      const double* bi, double* out, int n) {
    const __m256d vcr = _mm256_set1_pd(cr);
    const __m256d vci = _mm256_set1_pd(ci);
    int k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d var = _mm256_loadu_pd(ar + k);
        const __m256d vai = _mm256_loadu_pd(ai + k);
        const __m256d vbr = _mm256_loadu_pd(br + k);
        const __m256d vbi = _mm256_loadu_pd(bi + k);
        const __m256d pre = _mm256_fmsub_pd(var, vbr, _mm256_mul_pd(vai, vbi));
        const __m256d pim = _mm256_fmadd_pd(var, vbi, _mm256_mul_pd(vai, vbr));
        __m256d vo = _mm256_loadu_pd(out + k);
        vo = _mm256_add_pd(vo, _mm256_fmsub_pd(vcr, pre, _mm256_mul_pd(vci, pim)));
        _mm256_storeu_pd(out + k, vo);
    }
    for (; k < n; ++k) {
        const double pre = ar[k] * br[k] - ai[k] * bi[k];
        const double pim = ar[k] * bi[k] + ai[k] * br[k];
        out[k] += cr * pre - ci * pim;
    }
}

void add_norm2_avx2(double s, const double* ar, const double* ai, double* out, int n) {
    const __m256d vs = _mm256_set1_pd(s);
    int k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d var = _mm256_loadu_pd(ar + k);
        const __m256d vai = _mm256_loadu_pd(ai + k);
        const __m256d mag = _mm256_fmadd_pd(var, var, _mm256_mul_pd(vai, vai));
        __m256d vo = _mm256_loadu_pd(out + k);
        vo = _mm256_fmadd_pd(vs, mag, vo);
        _mm256_storeu_pd(out + k, vo);
    }
    for (; k < n; ++k) out[k] += s * (ar[k] * ar[k] + ai[k] * ai[k]);
}

} // namespace

const KernelTable& avx2_table() {
    static const KernelTable table{"avx2",      wdot_conj_avx2, wdot_avx2,        wnorm2_avx2,
                                   axpy_conj_avx2, add_re_prod_avx2, add_norm2_avx2};
    return table;
}

} // namespace fcapa::kernels

#else

namespace fcapa::kernels {
// Non-x86 builds fall back to the scalar reference table.
const KernelTable& avx2_table() { return scalar_table(); }
} // namespace fcapa::kernels

#endif
