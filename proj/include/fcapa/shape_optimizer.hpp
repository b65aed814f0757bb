// SPDX-License-Identifier: Apache-2.0
//
// Surface-shape optimization: the dominant gradient field at the quadrature
// nodes, the Euler-Lagrange residual on the uniform shape grid, a projected
// Armijo ascent step, and the outer solver loop alternating auxiliary,
// current-coefficient and shape updates.

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fcapa/current_optimizer.hpp"
#include "fcapa/em_channel.hpp"
#include "fcapa/geometry.hpp"

namespace fcapa {

struct ArmijoOptions {
    // Initial step nu0 = initial_step_scale * wavelength / max|G|; scaling the
    // first trial to the wavelength keeps deformation increments sub-wavelength.
    double initial_step_scale = 1e-3;
    double shrink = 0.5;       // backtracking factor
    double slope_coeff = 1e-4; // sufficient-increase coefficient c1
    double min_step = 1e-12;   // give up below this step size
};

struct SolveOptions {
    int outer_iterations = 20;
    double early_stop_tol = 1e-6; // relative surrogate change
    int early_stop_hits = 2;      // consecutive small changes required
    int quadrature_order = 20;
    ArmijoOptions armijo;
};

struct ShapeGradient {
    std::vector<double> gd_nodes; // dominant bracket at quadrature nodes
    std::vector<double> gd_grid;  // resampled to the uniform shape grid
    std::vector<double> el_grid;  // Euler-Lagrange residual (ascent field)
};

struct SolveReport {
    int iterations = 0;
    std::vector<double> surrogate_trace; // objective after each coefficient solve
    std::vector<double> arpu_trace;
    SurfaceShape shape;       // final surface
    CurrentField currents;    // final, power-normalized
    FredholmSolution fredholm;
    RateReport rates;
    double power = 0.0;       // quadrature power of the normalized currents
    double wall_seconds = 0.0;
};

// Node-wise dominant gradient field, summed over users:
//   gd(n) = sum_k [ 2 Re{A_k H(n,k) J(n,k)}
//                   - sum_i ( 2 B_i Re{conj(I_{k,i}) H(n,k) J(n,i)}
//                             + C_i |J(n,i)|^2 ) ]
// with raw constants and I_{k,i} = w(i,k). Currents must be the raw
// (un-normalized) output of eval_currents built from the same constants and W.
std::vector<double> dominant_field(const ChannelSet& ch, const CurrentField& raw_currents,
                                   const FpConstants& consts, const FredholmSolution& sol);

// Bilinear resample of node values from the Gauss-Legendre tensor grid onto
// the uniform shape grid, with nearest-edge extrapolation outside the node hull.
std::vector<double> resample_to_grid(std::span<const double> node_values,
                                     const QuadratureGrid& grid, const SurfaceShape& shape);

// G = -d_u((du_g / zeta) * gd) - d_v((dv_g / zeta) * gd) by central
// differences at interior points; boundary values are pinned to zero
// (admissible perturbations vanish on the domain boundary).
std::vector<double> el_residual(std::span<const double> gd_grid, const ShapeFields& fields,
                                const SurfaceShape& shape);

struct AscentResult {
    SurfaceShape shape;
    double step = 0.0; // accepted step size; 0 signals a stall, not an error
    double gain = 0.0; // objective improvement of the accepted step
};

// Projected backtracking ascent: g' = project_morph(g + nu*G), accepted when
// objective(g') >= base + c1 * nu * ||G||^2 * du * dv.
AscentResult armijo_ascent(const SurfaceShape& shape, std::span<const double> el_grid,
                           const std::function<double(const SurfaceShape&)>& objective,
                           double base_value, double wavelength, const ArmijoOptions& opts);

// Full optimization loop; `initial` supplies both the starting surface and the
// morph band. With morph_range = 0 the shape stays fixed and the loop reduces
// to the rigid-aperture coefficient iteration.
SolveReport solve(const Scenario& scn, const SurfaceShape& initial, const SolveOptions& opts);

} // namespace fcapa
