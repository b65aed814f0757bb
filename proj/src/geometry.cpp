// SPDX-License-Identifier: Apache-2.0

#include "fcapa/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fcapa/errors.hpp"

namespace fcapa {
namespace {

SurfaceShape make_shape(double length_x, double length_z, int resolution, double morph_range) {
    if (length_x <= 0.0 || length_z <= 0.0)
        throw InvalidConfigError("shape: aperture lengths must be positive");
    if (resolution < 3) throw InvalidConfigError("shape: grid resolution must be >= 3");
    if (morph_range < 0.0) throw InvalidConfigError("shape: morph range must be >= 0");
    SurfaceShape s;
    s.half_length_u = 0.5 * length_x;
    s.half_length_v = 0.5 * length_z;
    s.resolution = resolution;
    s.morph_range = morph_range;
    s.g.assign(std::size_t(resolution) * resolution, 0.0);
    s.g_ref = s.g;
    return s;
}

// Second-order first derivative along one axis of a row-major grid.
// stride selects the axis: 1 for u, resolution for v.
double diff1(const std::vector<double>& f, std::size_t idx, int pos, int count, std::size_t stride,
             double h) {
    if (pos == 0) return (-3.0 * f[idx] + 4.0 * f[idx + stride] - f[idx + 2 * stride]) / (2.0 * h);
    if (pos == count - 1)
        return (3.0 * f[idx] - 4.0 * f[idx - stride] + f[idx - 2 * stride]) / (2.0 * h);
    return (f[idx + stride] - f[idx - stride]) / (2.0 * h);
}

} // namespace

double eval_paraboloid(double u, double v) { return u * u + v * v; }

SurfaceShape make_flat_shape(double length_x, double length_z, int resolution,
                             double morph_range) {
    return make_shape(length_x, length_z, resolution, morph_range);
}

SurfaceShape make_paraboloid_shape(double length_x, double length_z, int resolution,
                                   double morph_range) {
    SurfaceShape s = make_shape(length_x, length_z, resolution, morph_range);
    for (int iv = 0; iv < resolution; ++iv)
        for (int iu = 0; iu < resolution; ++iu)
            s.g[s.index(iv, iu)] = eval_paraboloid(s.u_at(iu), s.v_at(iv));
    s.g_ref = s.g;
    return s;
}

SurfaceShape shape_from_preset(const std::string& name, double length_x, double length_z,
                               int resolution, double morph_range) {
    if (name == "flat") return make_flat_shape(length_x, length_z, resolution, morph_range);
    if (name == "paraboloid")
        return make_paraboloid_shape(length_x, length_z, resolution, morph_range);
    throw InvalidConfigError("shape preset must be \"flat\" or \"paraboloid\", got \"" + name +
                             "\"");
}

SurfaceShape shape_from_csv(const std::string& path, double morph_range) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open shape file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty shape file: " + path);
    std::vector<double> us, vs, gs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        double u = 0, v = 0, g = 0;
        char c1 = 0, c2 = 0;
        if (!(row >> u >> c1 >> v >> c2 >> g) || c1 != ',' || c2 != ',')
            throw IoError("malformed row in shape file: " + path);
        us.push_back(u);
        vs.push_back(v);
        gs.push_back(g);
    }
    const auto count = gs.size();
    const int res = static_cast<int>(std::lround(std::sqrt(double(count))));
    if (res < 3 || std::size_t(res) * res != count)
        throw InvalidConfigError("shape file must hold a square grid of >= 3x3 points: " + path);

    const double u_min = us.front(), u_max = us[res - 1];
    const double v_min = vs.front(), v_max = vs[count - 1];
    SurfaceShape s = make_shape(u_max - u_min, v_max - v_min, res, morph_range);
    if (std::abs(u_min + u_max) > 1e-9 * (u_max - u_min) ||
        std::abs(v_min + v_max) > 1e-9 * (v_max - v_min))
        throw InvalidConfigError("shape grid must be centred on the origin: " + path);
    // Validate uniform row-major layout while copying.
    for (int iv = 0; iv < res; ++iv) {
        for (int iu = 0; iu < res; ++iu) {
            const std::size_t n = s.index(iv, iu);
            if (std::abs(us[n] - s.u_at(iu)) > 1e-9 * (1.0 + std::abs(us[n])) ||
                std::abs(vs[n] - s.v_at(iv)) > 1e-9 * (1.0 + std::abs(vs[n])))
                throw InvalidConfigError("shape grid is not uniform row-major: " + path);
            s.g[n] = gs[n];
        }
    }
    s.g_ref = s.g;
    return s;
}

ShapeFields finite_diff_fields(const SurfaceShape& shape) {
    const int res = shape.resolution;
    if (res < 3) throw InvalidConfigError("finite_diff_fields: resolution must be >= 3");
    ShapeFields f;
    f.resolution = res;
    const std::size_t n2 = std::size_t(res) * res;
    f.du_g.resize(n2);
    f.dv_g.resize(n2);
    f.zeta.resize(n2);
    const double hu = shape.du();
    const double hv = shape.dv();
    for (int iv = 0; iv < res; ++iv) {
        for (int iu = 0; iu < res; ++iu) {
            const std::size_t idx = shape.index(iv, iu);
            const double gu = diff1(shape.g, idx, iu, res, 1, hu);
            const double gv = diff1(shape.g, idx, iv, res, std::size_t(res), hv);
            f.du_g[idx] = gu;
            f.dv_g[idx] = gv;
            f.zeta[idx] = std::sqrt(1.0 + gu * gu + gv * gv);
        }
    }
    return f;
}

std::vector<ShapeSample> sample_shape(const SurfaceShape& shape, const ShapeFields& fields,
                                      std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) throw DimensionError("sample_shape: u/v length mismatch");
    if (fields.resolution != shape.resolution)
        throw DimensionError("sample_shape: fields resolution mismatch");
    const int res = shape.resolution;
    const double hu = shape.du();
    const double hv = shape.dv();
    // Tolerate rounding at the rectangle edge but reject genuinely outside points.
    const double tol_u = 1e-12 * (1.0 + shape.half_length_u);
    const double tol_v = 1e-12 * (1.0 + shape.half_length_v);

    std::vector<ShapeSample> out(u.size());
    for (std::size_t p = 0; p < u.size(); ++p) {
        const double uu = u[p];
        const double vv = v[p];
        if (uu < -shape.half_length_u - tol_u || uu > shape.half_length_u + tol_u ||
            vv < -shape.half_length_v - tol_v || vv > shape.half_length_v + tol_v)
            throw OutOfDomainError("sample_shape: point outside the parameter rectangle");

        double fu = (uu + shape.half_length_u) / hu;
        double fv = (vv + shape.half_length_v) / hv;
        int iu = std::clamp(static_cast<int>(std::floor(fu)), 0, res - 2);
        int iv = std::clamp(static_cast<int>(std::floor(fv)), 0, res - 2);
        const double tu = std::clamp(fu - iu, 0.0, 1.0);
        const double tv = std::clamp(fv - iv, 0.0, 1.0);

        const std::size_t i00 = shape.index(iv, iu);
        const std::size_t i01 = shape.index(iv, iu + 1);
        const std::size_t i10 = shape.index(iv + 1, iu);
        const std::size_t i11 = shape.index(iv + 1, iu + 1);
        const double w00 = (1.0 - tu) * (1.0 - tv);
        const double w01 = tu * (1.0 - tv);
        const double w10 = (1.0 - tu) * tv;
        const double w11 = tu * tv;

        auto lerp = [&](const std::vector<double>& f) {
            return w00 * f[i00] + w01 * f[i01] + w10 * f[i10] + w11 * f[i11];
        };
        ShapeSample s;
        s.g = lerp(shape.g);
        s.du_g = lerp(fields.du_g);
        s.dv_g = lerp(fields.dv_g);
        s.zeta = std::sqrt(1.0 + s.du_g * s.du_g + s.dv_g * s.dv_g);
        out[p] = s;
    }
    return out;
}

std::vector<ShapeSample> sample_shape(const SurfaceShape& shape, std::span<const double> u,
                                      std::span<const double> v) {
    return sample_shape(shape, finite_diff_fields(shape), u, v);
}

SurfaceShape project_morph(SurfaceShape shape) {
    const double half = 0.5 * shape.morph_range;
    for (std::size_t i = 0; i < shape.g.size(); ++i)
        shape.g[i] = std::clamp(shape.g[i], shape.g_ref[i] - half, shape.g_ref[i] + half);
    return shape;
}

} // namespace fcapa
