// SPDX-License-Identifier: Apache-2.0

#include "fcapa/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "fcapa/errors.hpp"
#include "fcapa/kernels.hpp"

namespace fcapa {
namespace {

// Legendre polynomial value and derivative via the three-term recurrence.
void legendre(int order, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    if (order == 0) {
        p = p0;
        dp = 0.0;
        return;
    }
    for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = order * (x * p1 - p0) / (x * x - 1.0);
}

} // namespace

std::pair<std::vector<double>, std::vector<double>> gl_rule(int order) {
    if (order < 1) throw InvalidConfigError("gl_rule: order must be >= 1");
    std::vector<double> nodes(order), weights(order);
    if (order == 1) {
        nodes[0] = 0.0;
        weights[0] = 2.0;
        return {nodes, weights};
    }
    // Roots come in +/- pairs; compute the negative half and mirror so the
    // symmetry invariant holds exactly.
    const int half = order / 2;
    for (int i = 0; i < half; ++i) {
        double x = -std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double p = 0.0, dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            legendre(order, x, p, dp);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        legendre(order, x, p, dp);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = x;
        weights[i] = w;
        nodes[order - 1 - i] = -x;
        weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) {
        double p = 0.0, dp = 0.0;
        legendre(order, 0.0, p, dp);
        nodes[half] = 0.0;
        weights[half] = 2.0 / (dp * dp);
    }
    return {nodes, weights};
}

QuadratureGrid tensor_grid(int order, double length_x, double length_z) {
    if (length_x <= 0.0 || length_z <= 0.0)
        throw InvalidConfigError("tensor_grid: aperture lengths must be positive");
    QuadratureGrid grid;
    grid.order = order;
    grid.length_x = length_x;
    grid.length_z = length_z;
    auto [nodes, weights] = gl_rule(order);
    grid.nodes_1d = std::move(nodes);
    grid.weights_1d = std::move(weights);

    const int n2 = order * order;
    grid.node_u.resize(n2);
    grid.node_v.resize(n2);
    grid.weights_2d.resize(n2);
    const double scale = length_x * length_z / 4.0;
    for (int iv = 0; iv < order; ++iv) {
        for (int iu = 0; iu < order; ++iu) {
            const int n = iv * order + iu;
            grid.node_u[n] = 0.5 * length_x * grid.nodes_1d[iu];
            grid.node_v[n] = 0.5 * length_z * grid.nodes_1d[iv];
            grid.weights_2d[n] = scale * grid.weights_1d[iu] * grid.weights_1d[iv];
        }
    }
    return grid;
}

std::complex<double> integrate(std::span<const std::complex<double>> values,
                               const QuadratureGrid& grid) {
    if (static_cast<int>(values.size()) != grid.node_count())
        throw DimensionError("integrate: sample count does not match grid");
    double re = 0.0, im = 0.0;
    for (int n = 0; n < grid.node_count(); ++n) {
        re += grid.weights_2d[n] * values[n].real();
        im += grid.weights_2d[n] * values[n].imag();
    }
    return {re, im};
}

double integrate(std::span<const double> values, const QuadratureGrid& grid) {
    if (static_cast<int>(values.size()) != grid.node_count())
        throw DimensionError("integrate: sample count does not match grid");
    double s = 0.0;
    for (int n = 0; n < grid.node_count(); ++n) s += grid.weights_2d[n] * values[n];
    return s;
}

} // namespace fcapa
