// SPDX-License-Identifier: Apache-2.0
//
// Benchmark schemes: rigid continuous aperture, conventional discrete MIMO,
// and flexible discrete MIMO with zero-forcing or fractional-programming
// precoders.
//
// Every precoder used here lies in the column span of the channel matrix, so
// beamformers are represented as h * T with a K x K coefficient matrix T and
// all updates run in K-space on the Gram matrix G = h^H h. Element counts
// never enter the per-iteration cost.

#pragma once

#include <vector>

#include "fcapa/em_channel.hpp"
#include "fcapa/shape_optimizer.hpp"

namespace fcapa {

enum class Beamformer { zero_forcing, fractional_programming };

struct DiscreteArray {
    double spacing = 0.0;       // d = lambda/2
    double element_area = 0.0;  // A_d = lambda^2 / (4 pi)
    int count_x = 0;
    int count_z = 0;
    std::vector<Vec3> positions;     // element centres, y = reference height
    std::vector<double> zeta;        // reference-surface area factor (1 when flat)
    std::vector<double> ref_height;  // morph band is ref_height +/- xi/2
    double morph_range = 0.0;

    int count() const { return count_x * count_z; }
};

struct DiscreteChannel {
    kernels::ComplexCols h; // element x user
};

// Element grid s = [(n_x-1)d - Lx/2, g, (n_z-1)d - Lz/2] with d = lambda/2 and
// N = ceil(L/d) elements per axis. With a shape the heights and area factors
// come from the sampled surface; without one the array is flat (conventional).
DiscreteArray build_discrete_array(const Scenario& scn, const SurfaceShape* shape);

// h(n,k) = sqrt(A_d) * H_k(position_n) * zeta_n.
DiscreteChannel discrete_channels(const DiscreteArray& arr, const Scenario& scn);

// Gram matrix G = h^H h.
linalg::CMat discrete_gram(const DiscreteChannel& ch);

// Zero-forcing coefficients (beamformers = h * T) with equal per-user power
// P_T / K. Requires element count >= K and a full-rank channel.
linalg::CMat zf_coefficients(const linalg::CMat& gram, const Scenario& scn);
double zf_wsr(const DiscreteChannel& ch, const Scenario& scn);

struct DiscreteFpOptions {
    int iterations = 50;
    double tolerance = 1e-6;
};

struct DiscreteFpResult {
    linalg::CMat t;                      // beamformer coefficients, w_i = h * t(:,i)
    std::vector<double> objective_trace; // weighted sum rate per iteration
    RateReport rates;
    int iterations = 0;
};

// Discrete fractional-programming precoder: auxiliary closed forms alternate
// with w_k = (sum_i B_i h_i h_i^H + sum_i C_i I)^{-1} conj(A_k) h_k, power
// normalized each round. Initialized from the zero-forcing point when the
// channel has full rank, so the converged objective dominates it.
DiscreteFpResult fp_solve(const linalg::CMat& gram, const Scenario& scn,
                          const DiscreteFpOptions& opts = {});
double fp_wsr(const DiscreteChannel& ch, const Scenario& scn);

// Rigid continuous aperture: the flat surface with zero morph range.
SolveReport rigid_capa(const Scenario& scn, const SolveOptions& opts, int grid_resolution = 64);
double rigid_capa_wsr(const Scenario& scn, const SolveOptions& opts, int grid_resolution = 64);

struct MimoOptions {
    Beamformer beamformer = Beamformer::fractional_programming;
    DiscreteFpOptions fp;
    int outer_iterations = 20;
    double early_stop_tol = 1e-6;
    int early_stop_hits = 2;
    ArmijoOptions armijo;
    double fd_step_scale = 1e-5; // height perturbation, in wavelengths
};

struct MimoReport {
    double arpu = 0.0;
    RateReport rates;
    int iterations = 0;
    std::vector<double> objective_trace;
    std::vector<double> heights; // final element heights
    double power = 0.0;          // sum_k ||w_k||^2 after normalization
};

// Discrete array on the flat plane, single precoder solve.
MimoReport conventional_mimo(const Scenario& scn, const MimoOptions& opts);

// Discrete array on the reference surface with element heights adjustable
// within +/- xi/2, driven by central-difference gradients of the precoder
// objective and a projected Armijo ascent. With xi = 0 this reduces to a
// single precoder solve on the reference surface.
MimoReport flexible_mimo(const Scenario& scn, const SurfaceShape& reference,
                         const MimoOptions& opts);

} // namespace fcapa
