// SPDX-License-Identifier: Apache-2.0
//
// Deformable aperture surface y = g(u,v) on a uniform Cartesian grid, its
// finite-difference slope fields, the area-element factor
// zeta = sqrt(1 + (du g)^2 + (dv g)^2), and the morphability projection.

#pragma once

#include <span>
#include <string>
#include <vector>

namespace fcapa {

// Height field over the parameter rectangle, sampled on a uniform grid.
// Grid storage is row-major with the outer index over v and the inner index
// over u: entry (iv, iu) sits at iv*resolution + iu, matching the quadrature
// node ordering.
struct SurfaceShape {
    double half_length_u = 0.25; // Lx/2
    double half_length_v = 0.25; // Lz/2
    int resolution = 64;         // grid points per axis
    std::vector<double> g;       // current heights (m)
    std::vector<double> g_ref;   // reference heights; morph band is g_ref +/- xi/2
    double morph_range = 0.0;    // xi >= 0 (m)

    double du() const { return 2.0 * half_length_u / (resolution - 1); }
    double dv() const { return 2.0 * half_length_v / (resolution - 1); }
    double u_at(int iu) const { return -half_length_u + iu * du(); }
    double v_at(int iv) const { return -half_length_v + iv * dv(); }
    std::size_t index(int iv, int iu) const { return std::size_t(iv) * resolution + iu; }
};

// Slope and area-element fields on the same grid as the shape.
struct ShapeFields {
    int resolution = 0;
    std::vector<double> du_g;
    std::vector<double> dv_g;
    std::vector<double> zeta; // >= 1 everywhere
};

struct ShapeSample {
    double g = 0.0;
    double du_g = 0.0;
    double dv_g = 0.0;
    double zeta = 1.0;
};

double eval_paraboloid(double u, double v);

SurfaceShape make_flat_shape(double length_x, double length_z, int resolution, double morph_range);
SurfaceShape make_paraboloid_shape(double length_x, double length_z, int resolution,
                                   double morph_range);
// Preset by name: "flat" or "paraboloid".
SurfaceShape shape_from_preset(const std::string& name, double length_x, double length_z,
                               int resolution, double morph_range);
// Load a custom grid from CSV with header "u,v,g", rows in row-major order
// (v outer, u inner) over a uniform square grid.
SurfaceShape shape_from_csv(const std::string& path, double morph_range);

// Central differences at interior points, second-order one-sided stencils on
// the boundary. Requires resolution >= 3.
ShapeFields finite_diff_fields(const SurfaceShape& shape);

// Bilinear interpolation of g and the slope fields at the given points; zeta
// is recomputed from the interpolated slopes so zeta >= 1 holds at samples.
// Points outside the parameter rectangle raise OutOfDomainError.
std::vector<ShapeSample> sample_shape(const SurfaceShape& shape, const ShapeFields& fields,
                                      std::span<const double> u, std::span<const double> v);
std::vector<ShapeSample> sample_shape(const SurfaceShape& shape, std::span<const double> u,
                                      std::span<const double> v);

// Element-wise clamp of g into [g_ref - xi/2, g_ref + xi/2].
SurfaceShape project_morph(SurfaceShape shape);

} // namespace fcapa
