// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "fcapa/errors.hpp"
#include "fcapa/geometry.hpp"

using namespace fcapa;

TEST_SUITE("geometry") {

TEST_CASE("paraboloid evaluation") {
    CHECK(eval_paraboloid(0.0, 0.0) == 0.0);
    CHECK(eval_paraboloid(0.25, 0.25) == doctest::Approx(0.125));
    CHECK(eval_paraboloid(-0.25, 0.25) == eval_paraboloid(0.25, 0.25));
}

TEST_CASE("flat shape has unit area factor and zero slopes") {
    const SurfaceShape s = make_flat_shape(0.5, 0.5, 16, 0.0);
    const ShapeFields f = finite_diff_fields(s);
    for (const double v : f.du_g) CHECK(v == 0.0);
    for (const double v : f.dv_g) CHECK(v == 0.0);
    for (const double v : f.zeta) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("resolution below 3 is rejected") {
    CHECK_THROWS_AS(make_flat_shape(0.5, 0.5, 2, 0.0), InvalidConfigError);
}

TEST_CASE("finite differences are exact on affine and quadratic fields") {
    // Affine: g = 0.3 u - 0.7 v reproduces constant slopes exactly.
    SurfaceShape s = make_flat_shape(0.5, 0.5, 9, 0.0);
    for (int iv = 0; iv < 9; ++iv)
        for (int iu = 0; iu < 9; ++iu)
            s.g[s.index(iv, iu)] = 0.3 * s.u_at(iu) - 0.7 * s.v_at(iv);
    const ShapeFields f = finite_diff_fields(s);
    for (const double v : f.du_g) CHECK(v == doctest::Approx(0.3).epsilon(1e-12));
    for (const double v : f.dv_g) CHECK(v == doctest::Approx(-0.7).epsilon(1e-12));

    // Quadratic: the centred and one-sided second-order stencils are exact on
    // the paraboloid, so zeta matches the closed form at every grid point.
    const SurfaceShape p = make_paraboloid_shape(0.5, 0.5, 21, 0.0);
    const ShapeFields pf = finite_diff_fields(p);
    for (int iv = 0; iv < 21; ++iv)
        for (int iu = 0; iu < 21; ++iu) {
            const double u = p.u_at(iu), v = p.v_at(iv);
            const double expect = std::sqrt(1.0 + 4.0 * u * u + 4.0 * v * v);
            CHECK(pf.zeta[p.index(iv, iu)] == doctest::Approx(expect).epsilon(1e-12));
        }
    // Spot value away from the axes.
    const auto sample = sample_shape(p, std::vector<double>{0.25}, std::vector<double>{0.25});
    CHECK(sample[0].zeta == doctest::Approx(std::sqrt(1.5)).epsilon(1e-9));
}

TEST_CASE("finite differences converge at second order on a smooth field") {
    // Transcendental surface: derivative stencils carry a genuine O(h^2)
    // truncation error, so halving h must cut the error by about 4.
    auto field = [](double u, double v) { return 0.05 * std::sin(7.0 * u) * std::cos(5.0 * v); };
    auto max_error = [&](int res) {
        SurfaceShape s = make_flat_shape(0.5, 0.5, res, 0.0);
        for (int iv = 0; iv < res; ++iv)
            for (int iu = 0; iu < res; ++iu)
                s.g[s.index(iv, iu)] = field(s.u_at(iu), s.v_at(iv));
        const ShapeFields f = finite_diff_fields(s);
        double err = 0.0;
        for (int iv = 0; iv < res; ++iv)
            for (int iu = 0; iu < res; ++iu) {
                const double u = s.u_at(iu), v = s.v_at(iv);
                const double du = 0.35 * std::cos(7.0 * u) * std::cos(5.0 * v);
                const double dv = -0.25 * std::sin(7.0 * u) * std::sin(5.0 * v);
                const double expect = std::sqrt(1.0 + du * du + dv * dv);
                err = std::max(err, std::abs(f.zeta[s.index(iv, iu)] - expect));
            }
        return err;
    };
    const double coarse = max_error(33);
    const double fine = max_error(65); // grid spacing halves
    CHECK(coarse / fine >= 3.5);
}

TEST_CASE("sampling reproduces grid nodes and constant fields") {
    SurfaceShape s = make_flat_shape(0.5, 0.5, 11, 0.0);
    for (auto& g : s.g) g = 0.8;
    const std::vector<double> us{s.u_at(3), 0.017};
    const std::vector<double> vs{s.v_at(7), -0.21};
    const auto samples = sample_shape(s, us, vs);
    CHECK(samples[0].g == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(samples[1].g == doctest::Approx(0.8).epsilon(1e-15));
    for (const auto& smp : samples) {
        CHECK(smp.du_g == doctest::Approx(0.0));
        CHECK(smp.dv_g == doctest::Approx(0.0));
        CHECK(smp.zeta == doctest::Approx(1.0));
    }
}

TEST_CASE("bilinear sampling error on the paraboloid stays within the cell bound") {
    const SurfaceShape p = make_paraboloid_shape(0.5, 0.5, 201, 0.0);
    const auto samples =
        sample_shape(p, std::vector<double>{0.1}, std::vector<double>{-0.2});
    CHECK(std::abs(samples[0].g - 0.05) < 1e-4);
    CHECK(samples[0].zeta >= 1.0);
}

TEST_CASE("out-of-domain sampling is rejected") {
    const SurfaceShape s = make_flat_shape(0.5, 0.5, 8, 0.0);
    CHECK_THROWS_AS(sample_shape(s, std::vector<double>{0.3}, std::vector<double>{0.0}),
                    OutOfDomainError);
}

TEST_CASE("morph projection clamps, fixes, and is idempotent") {
    SurfaceShape s = make_paraboloid_shape(0.5, 0.5, 9, 0.0);
    SurfaceShape zero_band = s;
    for (auto& g : zero_band.g) g += 0.5;
    zero_band = project_morph(zero_band);
    CHECK(zero_band.g == zero_band.g_ref); // xi = 0 pins g to the reference

    SurfaceShape band = make_paraboloid_shape(0.5, 0.5, 9, 0.2);
    for (auto& g : band.g) g += 0.2; // overshoot the upper bound
    band = project_morph(band);
    for (std::size_t i = 0; i < band.g.size(); ++i)
        CHECK(band.g[i] == doctest::Approx(band.g_ref[i] + 0.1).epsilon(1e-15));
    const SurfaceShape again = project_morph(band);
    CHECK(again.g == band.g); // idempotent

    SurfaceShape inside = make_paraboloid_shape(0.5, 0.5, 9, 0.2);
    for (auto& g : inside.g) g += 0.03;
    const std::vector<double> before = inside.g;
    inside = project_morph(inside);
    CHECK(inside.g == before); // feasible points are untouched
}

TEST_CASE("zeta is at least one with equality only at zero slope") {
    const SurfaceShape p = make_paraboloid_shape(0.5, 0.5, 33, 0.0);
    const ShapeFields f = finite_diff_fields(p);
    for (std::size_t i = 0; i < f.zeta.size(); ++i) {
        CHECK(f.zeta[i] >= 1.0);
        if (f.du_g[i] == 0.0 && f.dv_g[i] == 0.0)
            CHECK(f.zeta[i] == doctest::Approx(1.0));
        else
            CHECK(f.zeta[i] > 1.0);
    }
}

TEST_CASE("csv round trip for a custom shape") {
    const SurfaceShape p = make_paraboloid_shape(0.5, 0.5, 9, 0.0);
    const std::string path = "shape_roundtrip_test.csv";
    {
        std::ofstream out(path);
        out << "u,v,g\n";
        for (int iv = 0; iv < 9; ++iv)
            for (int iu = 0; iu < 9; ++iu) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.u_at(iu), p.v_at(iv),
                              p.g[p.index(iv, iu)]);
                out << buf;
            }
    }
    const SurfaceShape loaded = shape_from_csv(path, 0.1);
    std::remove(path.c_str());
    REQUIRE(loaded.resolution == 9);
    CHECK(loaded.morph_range == 0.1);
    CHECK(loaded.half_length_u == doctest::Approx(0.25).epsilon(1e-12));
    for (std::size_t i = 0; i < loaded.g.size(); ++i)
        CHECK(loaded.g[i] == doctest::Approx(p.g[i]).epsilon(1e-14));

    CHECK_THROWS_AS(shape_from_csv("missing_file_does_not_exist.csv", 0.0), IoError);
}

TEST_CASE("preset lookup") {
    CHECK_NOTHROW(shape_from_preset("flat", 0.5, 0.5, 8, 0.0));
    CHECK_NOTHROW(shape_from_preset("paraboloid", 0.5, 0.5, 8, 0.0));
    CHECK_THROWS_AS(shape_from_preset("sphere", 0.5, 0.5, 8, 0.0), InvalidConfigError);
}

} // TEST_SUITE
