// SPDX-License-Identifier: Apache-2.0
//
// Gauss–Legendre quadrature: 1-D rule on (-1,1) and the tensor-product rule
// over the aperture parameter rectangle [-Lx/2, Lx/2] x [-Lz/2, Lz/2].

#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace fcapa {

struct QuadratureGrid {
    int order = 0;                   // points per axis
    std::vector<double> nodes_1d;    // ascending, symmetric about 0
    std::vector<double> weights_1d;  // sum = 2
    std::vector<double> node_u;      // order^2 values, row-major (see below)
    std::vector<double> node_v;
    std::vector<double> weights_2d;  // includes the (Lx*Lz)/4 scale; sum = Lx*Lz
    double length_x = 0.0;
    double length_z = 0.0;

    int node_count() const { return order * order; }
};

// Standard rule on [-1,1]; exact for polynomials of degree <= 2*order - 1.
// Nodes and weights from Newton iteration on the Legendre polynomial.
std::pair<std::vector<double>, std::vector<double>> gl_rule(int order);

// Tensor-product grid over the aperture rectangle. Node ordering is row-major
// with the outer index running over the v (z) axis and the inner index over
// the u (x) axis: node n = iv*order + iu. Every module indexing node arrays
// relies on this ordering.
QuadratureGrid tensor_grid(int order, double length_x, double length_z);

std::complex<double> integrate(std::span<const std::complex<double>> values,
                               const QuadratureGrid& grid);
double integrate(std::span<const double> values, const QuadratureGrid& grid);

} // namespace fcapa
