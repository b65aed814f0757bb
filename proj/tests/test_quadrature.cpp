// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>

#include "fcapa/em_channel.hpp"
#include "fcapa/errors.hpp"
#include "fcapa/geometry.hpp"
#include "fcapa/quadrature.hpp"
#include "fcapa/rng.hpp"
#include "oracles.hpp"

using namespace fcapa;

namespace {

// Exact integral of u^a v^b over [-Lx/2,Lx/2] x [-Lz/2,Lz/2].
double monomial_integral(int a, int b, double lx, double lz) {
    if (a % 2 == 1 || b % 2 == 1) return 0.0;
    const double iu = 2.0 * std::pow(0.5 * lx, a + 1) / (a + 1);
    const double iv = 2.0 * std::pow(0.5 * lz, b + 1) / (b + 1);
    return iu * iv;
}

} // namespace

TEST_SUITE("quadrature") {

TEST_CASE("one-point rule is the midpoint rule") {
    const auto [nodes, weights] = gl_rule(1);
    REQUIRE(nodes.size() == 1);
    CHECK(nodes[0] == doctest::Approx(0.0));
    CHECK(weights[0] == doctest::Approx(2.0));
}

TEST_CASE("two-point rule matches the closed form") {
    const auto [nodes, weights] = gl_rule(2);
    const double root = 1.0 / std::sqrt(3.0);
    CHECK(nodes[0] == doctest::Approx(-root).epsilon(1e-14));
    CHECK(nodes[1] == doctest::Approx(root).epsilon(1e-14));
    CHECK(weights[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(weights[1] == doctest::Approx(1.0).epsilon(1e-14));
    // Exactness at degree 3: integral of x^2 over [-1,1] is 2/3.
    double sum = 0.0;
    for (int i = 0; i < 2; ++i) sum += weights[i] * nodes[i] * nodes[i];
    CHECK(sum == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("rule invariants: weight sums and node symmetry") {
    for (const int order : {1, 2, 3, 5, 8, 20, 41}) {
        const auto [nodes, weights] = gl_rule(order);
        const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
        CHECK(std::abs(wsum - 2.0) < 1e-12);
        for (int i = 0; i < order; ++i)
            CHECK(nodes[i] == doctest::Approx(-nodes[order - 1 - i]).epsilon(1e-14));
        for (const double w : weights) CHECK(w > 0.0);
    }
}

TEST_CASE("invalid configuration is rejected") {
    CHECK_THROWS_AS(gl_rule(0), InvalidConfigError);
    CHECK_THROWS_AS(tensor_grid(4, -1.0, 0.5), InvalidConfigError);
    CHECK_THROWS_AS(tensor_grid(4, 0.5, 0.0), InvalidConfigError);
}

TEST_CASE("tensor grid integrates area and simple fields") {
    const auto grid = tensor_grid(2, 0.5, 0.5);
    CHECK(std::abs(std::accumulate(grid.weights_2d.begin(), grid.weights_2d.end(), 0.0) - 0.25) <
          1e-10 * 0.25);

    std::vector<double> ones(grid.node_count(), 1.0);
    CHECK(integrate(std::span<const double>(ones), grid) == doctest::Approx(0.25).epsilon(1e-14));

    // u^2 + v^2 over the square: exact value L^4/6 (symbolic), and the
    // two-point rule is exact at this degree.
    std::vector<double> para(grid.node_count());
    for (int n = 0; n < grid.node_count(); ++n)
        para[n] = grid.node_u[n] * grid.node_u[n] + grid.node_v[n] * grid.node_v[n];
    const double expect = std::pow(0.5, 4) / 6.0;
    CHECK(integrate(std::span<const double>(para), grid) ==
          doctest::Approx(expect).epsilon(1e-13));

    // Odd integrand vanishes by symmetry.
    std::vector<double> odd(grid.node_count());
    for (int n = 0; n < grid.node_count(); ++n) odd[n] = grid.node_u[n];
    CHECK(std::abs(integrate(std::span<const double>(odd), grid)) < 1e-14);
}

TEST_CASE("node ordering is row-major with v outer and u inner") {
    const auto grid = tensor_grid(3, 1.0, 2.0);
    for (int iv = 0; iv < 3; ++iv)
        for (int iu = 0; iu < 3; ++iu) {
            const int n = iv * 3 + iu;
            CHECK(grid.node_u[n] == doctest::Approx(0.5 * grid.nodes_1d[iu]));
            CHECK(grid.node_v[n] == doctest::Approx(1.0 * grid.nodes_1d[iv]));
        }
}

TEST_CASE("integrate rejects mismatched sample counts") {
    const auto grid = tensor_grid(3, 0.5, 0.5);
    std::vector<double> bad(5, 1.0);
    CHECK_THROWS_AS(integrate(std::span<const double>(bad), grid), DimensionError);
    std::vector<std::complex<double>> zeros(grid.node_count(), {0.0, 0.0});
    CHECK(integrate(std::span<const std::complex<double>>(zeros), grid) ==
          std::complex<double>{});
}

TEST_CASE("polynomial exactness up to degree 2*order - 1") {
    SplitMix64 rng(5);
    for (const int order : {2, 4, 7}) {
        const double lx = 0.8, lz = 0.6;
        const auto grid = tensor_grid(order, lx, lz);
        const int dmax = 2 * order - 1;
        // Random polynomial with total degree <= dmax in each axis separately
        // (the tensor rule is exact per axis).
        std::vector<double> coeff;
        std::vector<std::pair<int, int>> terms;
        for (int a = 0; a <= dmax; ++a)
            for (int b = 0; a + b <= dmax; ++b) {
                terms.emplace_back(a, b);
                coeff.push_back(rng.next_uniform(-1.0, 1.0));
            }
        std::vector<double> samples(grid.node_count(), 0.0);
        for (int n = 0; n < grid.node_count(); ++n)
            for (std::size_t t = 0; t < terms.size(); ++t)
                samples[n] += coeff[t] * std::pow(grid.node_u[n], terms[t].first) *
                              std::pow(grid.node_v[n], terms[t].second);
        double exact = 0.0;
        for (std::size_t t = 0; t < terms.size(); ++t)
            exact += coeff[t] * monomial_integral(terms[t].first, terms[t].second, lx, lz);
        const double got = integrate(std::span<const double>(samples), grid);
        CHECK(got == doctest::Approx(exact).epsilon(1e-10));
    }
}

TEST_CASE("integration is linear") {
    SplitMix64 rng(6);
    const auto grid = tensor_grid(5, 0.5, 0.5);
    const int n = grid.node_count();
    std::vector<std::complex<double>> f(n), g(n), combo(n);
    for (int i = 0; i < n; ++i) {
        f[i] = {rng.next_uniform(-1, 1), rng.next_uniform(-1, 1)};
        g[i] = {rng.next_uniform(-1, 1), rng.next_uniform(-1, 1)};
    }
    const std::complex<double> alpha{0.3, -1.1}, beta{-2.0, 0.7};
    for (int i = 0; i < n; ++i) combo[i] = alpha * f[i] + beta * g[i];
    const auto lhs = integrate(std::span<const std::complex<double>>(combo), grid);
    const auto rhs = alpha * integrate(std::span<const std::complex<double>>(f), grid) +
                     beta * integrate(std::span<const std::complex<double>>(g), grid);
    CHECK(std::abs(lhs - rhs) < 1e-13 * (1.0 + std::abs(rhs)));
}

TEST_CASE("paraboloid area factor matches the adaptive oracle") {
    // integral of sqrt(1 + 4u^2 + 4v^2) over the default aperture.
    const auto grid = tensor_grid(20, 0.5, 0.5);
    std::vector<double> zeta(grid.node_count());
    for (int n = 0; n < grid.node_count(); ++n) {
        const double u = grid.node_u[n], v = grid.node_v[n];
        zeta[n] = std::sqrt(1.0 + 4.0 * u * u + 4.0 * v * v);
    }
    const double got = integrate(std::span<const double>(zeta), grid);
    const double expect = oracles::adaptive_integral_2d(
        [](double u, double v) { return std::sqrt(1.0 + 4.0 * u * u + 4.0 * v * v); }, -0.25,
        0.25, -0.25, 0.25, 1e-12);
    CHECK(got == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("refinement stability of channel-correlation integrands") {
    SplitMix64 rng(17);
    Scenario scn = oracles::random_scenario(4, rng);
    const SurfaceShape shape = make_paraboloid_shape(0.5, 0.5, 64, 0.0);

    const auto grid20 = tensor_grid(20, 0.5, 0.5);
    const auto grid40 = tensor_grid(40, 0.5, 0.5);
    const auto q20 = correlation_q(build_channels(scn, shape, grid20), grid20);
    const auto q40 = correlation_q(build_channels(scn, shape, grid40), grid40);
    const double scale = linalg::max_abs(q40);
    CHECK(linalg::max_abs_diff(q20, q40) < 1e-6 * scale);
}

} // TEST_SUITE
