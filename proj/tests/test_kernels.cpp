// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <complex>
#include <vector>

#include "fcapa/kernels.hpp"
#include "fcapa/rng.hpp"

using namespace fcapa;
using std::complex;

namespace {

struct RandomArrays {
    std::vector<double> w, ar, ai, br, bi;
    explicit RandomArrays(int n, std::uint64_t seed) {
        SplitMix64 rng(seed);
        auto fill = [&](std::vector<double>& v) {
            v.resize(n);
            for (auto& x : v) x = rng.next_uniform(-1.0, 1.0);
        };
        fill(w);
        fill(ar);
        fill(ai);
        fill(br);
        fill(bi);
    }
};

// Straightforward std::complex evaluation, the semantic reference.
complex<double> ref_wdot_conj(const RandomArrays& d, int n) {
    complex<double> s{};
    for (int k = 0; k < n; ++k)
        s += d.w[k] * std::conj(complex<double>(d.ar[k], d.ai[k])) *
             complex<double>(d.br[k], d.bi[k]);
    return s;
}

complex<double> ref_wdot(const RandomArrays& d, int n) {
    complex<double> s{};
    for (int k = 0; k < n; ++k)
        s += d.w[k] * complex<double>(d.ar[k], d.ai[k]) * complex<double>(d.br[k], d.bi[k]);
    return s;
}

} // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar reference matches std::complex arithmetic") {
    for (const int n : {1, 3, 7, 64, 401}) {
        RandomArrays d(n, 11 + n);
        const auto& kt = kernels::scalar_table();
        double re = 0, im = 0;
        kt.wdot_conj(d.w.data(), d.ar.data(), d.ai.data(), d.br.data(), d.bi.data(), n, re, im);
        const auto expect = ref_wdot_conj(d, n);
        CHECK(re == doctest::Approx(expect.real()).epsilon(1e-13));
        CHECK(im == doctest::Approx(expect.imag()).epsilon(1e-13));

        kt.wdot(d.w.data(), d.ar.data(), d.ai.data(), d.br.data(), d.bi.data(), n, re, im);
        const auto expect2 = ref_wdot(d, n);
        CHECK(re == doctest::Approx(expect2.real()).epsilon(1e-13));
        CHECK(im == doctest::Approx(expect2.imag()).epsilon(1e-13));
    }
}

TEST_CASE("every available variant agrees with the scalar reference") {
    for (const char* name : {"scalar", "avx2"}) {
        const auto* kt = kernels::table_by_name(name);
        if (!kt) continue; // variant not supported on this host
        CAPTURE(name);
        for (const int n : {1, 4, 5, 400, 1023}) {
            RandomArrays d(n, 1000 + n);
            const auto& ref = kernels::scalar_table();

            double re_a = 0, im_a = 0, re_b = 0, im_b = 0;
            kt->wdot_conj(d.w.data(), d.ar.data(), d.ai.data(), d.br.data(), d.bi.data(), n, re_a,
                          im_a);
            ref.wdot_conj(d.w.data(), d.ar.data(), d.ai.data(), d.br.data(), d.bi.data(), n, re_b,
                          im_b);
            CHECK(re_a == doctest::Approx(re_b).epsilon(1e-12));
            CHECK(im_a == doctest::Approx(im_b).epsilon(1e-12));

            kt->wdot(d.w.data(), d.ar.data(), d.ai.data(), d.br.data(), d.bi.data(), n, re_a,
                     im_a);
            ref.wdot(d.w.data(), d.ar.data(), d.ai.data(), d.br.data(), d.bi.data(), n, re_b,
                     im_b);
            CHECK(re_a == doctest::Approx(re_b).epsilon(1e-12));
            CHECK(im_a == doctest::Approx(im_b).epsilon(1e-12));

            CHECK(kt->wnorm2(d.w.data(), d.ar.data(), d.ai.data(), n) ==
                  doctest::Approx(ref.wnorm2(d.w.data(), d.ar.data(), d.ai.data(), n))
                      .epsilon(1e-12));

            std::vector<double> out_a(n, 0.25), out_b(n, 0.25);
            kt->add_re_prod(0.7, -0.3, d.ar.data(), d.ai.data(), d.br.data(), d.bi.data(),
                            out_a.data(), n);
            ref.add_re_prod(0.7, -0.3, d.ar.data(), d.ai.data(), d.br.data(), d.bi.data(),
                            out_b.data(), n);
            for (int i = 0; i < n; ++i)
                CHECK(out_a[i] == doctest::Approx(out_b[i]).epsilon(1e-12));

            std::vector<double> pr_a(n, 0.0), pi_a(n, 0.0), pr_b(n, 0.0), pi_b(n, 0.0);
            kt->axpy_conj(1.3, 0.4, d.ar.data(), d.ai.data(), pr_a.data(), pi_a.data(), n);
            ref.axpy_conj(1.3, 0.4, d.ar.data(), d.ai.data(), pr_b.data(), pi_b.data(), n);
            for (int i = 0; i < n; ++i) {
                CHECK(pr_a[i] == doctest::Approx(pr_b[i]).epsilon(1e-12));
                CHECK(pi_a[i] == doctest::Approx(pi_b[i]).epsilon(1e-12));
            }

            std::vector<double> nr_a(n, 1.0), nr_b(n, 1.0);
            kt->add_norm2(-0.9, d.ar.data(), d.ai.data(), nr_a.data(), n);
            ref.add_norm2(-0.9, d.ar.data(), d.ai.data(), nr_b.data(), n);
            for (int i = 0; i < n; ++i)
                CHECK(nr_a[i] == doctest::Approx(nr_b[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("active table is one of the known variants") {
    const auto& kt = kernels::active();
    const bool known = std::string(kt.name) == "scalar" || std::string(kt.name) == "avx2";
    CHECK(known);
}

TEST_CASE("ComplexCols stores column-contiguous complex planes") {
    kernels::ComplexCols m(3, 2);
    m.set(1, 1, {2.0, -3.0});
    CHECK(m.at(1, 1) == complex<double>(2.0, -3.0));
    CHECK(m.col_re(1)[1] == 2.0);
    CHECK(m.col_im(1)[1] == -3.0);
    m.scale(0.5);
    CHECK(m.at(1, 1) == complex<double>(1.0, -1.5));
}

} // TEST_SUITE
