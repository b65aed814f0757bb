// SPDX-License-Identifier: Apache-2.0
//
// SIMD kernel layer: weighted complex inner products and accumulations over
// quadrature-node arrays, in split real/imaginary (SoA) layout.
//
// Every kernel has a scalar reference implementation and an AVX2+FMA variant.
// The active table is selected once at startup from CPU capabilities and can
// be forced with the environment variable FCAPA_KERNELS=scalar|avx2.

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace fcapa::kernels {

// Column-major complex matrix stored as separate real/imaginary planes.
// Column j occupies rows*[j, j+1) in each plane, so per-column data is
// contiguous and directly consumable by the kernels below.
struct ComplexCols {
    int rows = 0;
    int cols = 0;
    std::vector<double> re, im;

    ComplexCols() = default;
    ComplexCols(int r, int c)
        : rows(r), cols(c), re(std::size_t(r) * c, 0.0), im(std::size_t(r) * c, 0.0) {}

    double* col_re(int j) { return re.data() + std::size_t(j) * rows; }
    double* col_im(int j) { return im.data() + std::size_t(j) * rows; }
    const double* col_re(int j) const { return re.data() + std::size_t(j) * rows; }
    const double* col_im(int j) const { return im.data() + std::size_t(j) * rows; }

    std::complex<double> at(int i, int j) const {
        const std::size_t idx = std::size_t(j) * rows + i;
        return {re[idx], im[idx]};
    }
    void set(int i, int j, std::complex<double> v) {
        const std::size_t idx = std::size_t(j) * rows + i;
        re[idx] = v.real();
        im[idx] = v.imag();
    }
    void scale(double s) {
        for (auto& x : re) x *= s;
        for (auto& x : im) x *= s;
    }
};

struct KernelTable {
    const char* name;

    // out = sum_n w[n] * conj(a[n]) * b[n]
    void (*wdot_conj)(const double* w, const double* ar, const double* ai, const double* br,
                      const double* bi, int n, double& out_re, double& out_im);

    // out = sum_n w[n] * a[n] * b[n]   (bilinear, no conjugation)
    void (*wdot)(const double* w, const double* ar, const double* ai, const double* br,
                 const double* bi, int n, double& out_re, double& out_im);

    // sum_n w[n] * |a[n]|^2
    double (*wnorm2)(const double* w, const double* ar, const double* ai, int n);

    // out[n] += t * conj(a[n])
    void (*axpy_conj)(double tr, double ti, const double* ar, const double* ai, double* out_re,
                      double* out_im, int n);

    // out[n] += Re( c * a[n] * b[n] )
    void (*add_re_prod)(double cr, double ci, const double* ar, const double* ai, const double* br,
                        const double* bi, double* out, int n);

    // out[n] += s * |a[n]|^2
    void (*add_norm2)(double s, const double* ar, const double* ai, double* out, int n);
};

// Runtime-selected table (cpuid + FCAPA_KERNELS override), fixed for the process.
const KernelTable& active();

// Scalar reference table, always available.
const KernelTable& scalar_table();

// Lookup by name ("scalar", "avx2"); nullptr when the variant is not compiled
// in or not supported by this CPU. Used by the equivalence tests.
const KernelTable* table_by_name(const std::string& name);

} // namespace fcapa::kernels
