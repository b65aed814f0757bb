// SPDX-License-Identifier: Apache-2.0
//
// Line-of-sight vector Green's function, the scalar continuous channel
// H_k(s) = u_k^T G(r_k, s) u_z for a z-polarized source current, channel
// sampling on the quadrature grid, and the K x K channel correlation matrix.

#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "fcapa/geometry.hpp"
#include "fcapa/kernels.hpp"
#include "fcapa/linalg.hpp"
#include "fcapa/quadrature.hpp"

namespace fcapa {

inline constexpr double speed_of_light = 299'792'458.0; // m/s
inline constexpr double free_space_impedance = 120.0 * 3.14159265358979323846; // Ohm

using Vec3 = std::array<double, 3>;
using Mat3c = std::array<std::complex<double>, 9>; // row-major 3x3

struct UserTerminal {
    Vec3 position{0.0, 15.0, 0.0};
    Vec3 polarization{0.0, 0.0, 1.0}; // unit vector
    double noise_var = 5.6e-3;        // V^2/m^2
    double weight = 1.0;              // alpha_k
};

struct Scenario {
    std::vector<UserTerminal> users;
    double frequency = 2.4e9;              // Hz
    double impedance = free_space_impedance;
    double transmit_power = 0.1;           // A^2
    double length_x = 0.5;                 // m
    double length_z = 0.5;                 // m

    int user_count() const { return static_cast<int>(users.size()); }
    double wavelength() const { return speed_of_light / frequency; }
    double aperture_area() const { return length_x * length_z; }

    // Checks the structural invariants (unit polarizations, positive powers).
    void validate() const;
};

// G(r,s) = -(j*eta*exp(-j*2*pi*|r-s|/lambda)) / (2*lambda*|r-s|)
//          * (I3 - (r-s)(r-s)^T / |r-s|^2).
Mat3c green_tensor(const Vec3& r, const Vec3& s, double wavelength, double impedance);

// pol^T * G(r,s) * u_z, evaluated without forming the 3x3 tensor.
std::complex<double> scalar_channel(const Vec3& r, const Vec3& s, const Vec3& pol,
                                    double wavelength, double impedance);

// Channel samples at the quadrature nodes of the deformed surface.
struct ChannelSet {
    kernels::ComplexCols h;        // node x user, h(n,k) = H_k at node n
    std::vector<double> zeta;      // area-element factor at each node
    std::vector<double> dweights;  // weights_2d[n] * zeta[n]

    int node_count() const { return h.rows; }
    int user_count() const { return h.cols; }
};

ChannelSet build_channels(const Scenario& scn, const SurfaceShape& shape,
                          const QuadratureGrid& grid);

// Q(i,m) = q_{i,m} = integral of H_m H_i^* zeta over the parameter rectangle.
// Hermitian positive semidefinite (Gram matrix of the sampled columns).
linalg::CMat correlation_q(const ChannelSet& ch, const QuadratureGrid& grid);
// Low-level variant over explicit per-node weights (weights_2d .* zeta).
linalg::CMat correlation_q(const kernels::ComplexCols& h, std::span<const double> dweights);

} // namespace fcapa
