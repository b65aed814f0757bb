// SPDX-License-Identifier: Apache-2.0

#include "fcapa/shape_optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "fcapa/errors.hpp"

namespace fcapa {

std::vector<double> dominant_field(const ChannelSet& ch, const CurrentField& raw_currents,
                                   const FpConstants& consts, const FredholmSolution& sol) {
    const int nodes = ch.node_count();
    const int k = ch.user_count();
    if (raw_currents.j.rows != nodes || raw_currents.j.cols != k || sol.w.rows != k)
        throw DimensionError("dominant_field: dimension mismatch");

    const auto& kt = kernels::active();
    const auto& h = ch.h;
    const auto& j = raw_currents.j;
    std::vector<double> gd(nodes, 0.0);

    // In the objective, |integral of H_k J_i zeta|^2 carries the weight of the
    // receiving user k, so the scalar weights in this field attach to the
    // channel index of each product, not the current index. The |J|^2 penalty
    // is linear in zeta and enters once, with the summed constant.
    for (int cur = 0; cur < k; ++cur) {
        const std::complex<double> c = 2.0 * consts.a_raw[cur];
        kt.add_re_prod(c.real(), c.imag(), h.col_re(cur), h.col_im(cur), j.col_re(cur),
                       j.col_im(cur), gd.data(), nodes);
        for (int i = 0; i < k; ++i) {
            // I_{k,i} = w(i,k): current i integrated against channel k.
            const std::complex<double> ci = -2.0 * consts.b_raw[cur] * std::conj(sol.w(i, cur));
            if (ci == std::complex<double>{}) continue;
            kt.add_re_prod(ci.real(), ci.imag(), h.col_re(cur), h.col_im(cur), j.col_re(i),
                           j.col_im(i), gd.data(), nodes);
        }
        kt.add_norm2(-consts.c_sum, j.col_re(cur), j.col_im(cur), gd.data(), nodes);
    }
    return gd;
}

std::vector<double> resample_to_grid(std::span<const double> node_values,
                                     const QuadratureGrid& grid, const SurfaceShape& shape) {
    if (static_cast<int>(node_values.size()) != grid.node_count())
        throw DimensionError("resample_to_grid: node value count mismatch");
    const int order = grid.order;
    const int res = shape.resolution;

    // 1-D physical node coordinates along each axis (ascending).
    std::vector<double> xs(order), zs(order);
    for (int i = 0; i < order; ++i) {
        xs[i] = 0.5 * grid.length_x * grid.nodes_1d[i];
        zs[i] = 0.5 * grid.length_z * grid.nodes_1d[i];
    }
    auto locate = [](const std::vector<double>& axis, double x, int& cell, double& t) {
        const int m = static_cast<int>(axis.size());
        if (m == 1) {
            cell = 0;
            t = 0.0;
            return;
        }
        auto it = std::upper_bound(axis.begin(), axis.end(), x);
        cell = std::clamp(static_cast<int>(it - axis.begin()) - 1, 0, m - 2);
        t = std::clamp((x - axis[cell]) / (axis[cell + 1] - axis[cell]), 0.0, 1.0);
    };

    std::vector<double> out(std::size_t(res) * res);
    for (int iv = 0; iv < res; ++iv) {
        int b = 0;
        double tv = 0.0;
        locate(zs, shape.v_at(iv), b, tv);
        for (int iu = 0; iu < res; ++iu) {
            int a = 0;
            double tu = 0.0;
            locate(xs, shape.u_at(iu), a, tu);
            const int a1 = std::min(a + 1, order - 1);
            const int b1 = std::min(b + 1, order - 1);
            const double v00 = node_values[std::size_t(b) * order + a];
            const double v01 = node_values[std::size_t(b) * order + a1];
            const double v10 = node_values[std::size_t(b1) * order + a];
            const double v11 = node_values[std::size_t(b1) * order + a1];
            out[shape.index(iv, iu)] = (1.0 - tv) * ((1.0 - tu) * v00 + tu * v01) +
                                       tv * ((1.0 - tu) * v10 + tu * v11);
        }
    }
    return out;
}

std::vector<double> el_residual(std::span<const double> gd_grid, const ShapeFields& fields,
                                const SurfaceShape& shape) {
    const int res = shape.resolution;
    if (static_cast<int>(gd_grid.size()) != res * res || fields.resolution != res)
        throw DimensionError("el_residual: grid size mismatch");

    const std::size_t n2 = std::size_t(res) * res;
    std::vector<double> pu(n2), pv(n2);
    for (std::size_t i = 0; i < n2; ++i) {
        pu[i] = fields.du_g[i] / fields.zeta[i] * gd_grid[i];
        pv[i] = fields.dv_g[i] / fields.zeta[i] * gd_grid[i];
    }
    std::vector<double> g(n2, 0.0);
    const double hu = shape.du();
    const double hv = shape.dv();
    for (int iv = 1; iv < res - 1; ++iv) {
        for (int iu = 1; iu < res - 1; ++iu) {
            const std::size_t idx = shape.index(iv, iu);
            const double div_u = (pu[idx + 1] - pu[idx - 1]) / (2.0 * hu);
            const double div_v = (pv[idx + res] - pv[idx - res]) / (2.0 * hv);
            g[idx] = -div_u - div_v;
        }
    }
    return g;
}

AscentResult armijo_ascent(const SurfaceShape& shape, std::span<const double> el_grid,
                           const std::function<double(const SurfaceShape&)>& objective,
                           double base_value, double wavelength, const ArmijoOptions& opts) {
    const std::size_t n2 = shape.g.size();
    if (el_grid.size() != n2) throw DimensionError("armijo_ascent: gradient size mismatch");

    double g_max = 0.0;
    double g_norm2 = 0.0;
    for (double v : el_grid) {
        g_max = std::max(g_max, std::abs(v));
        g_norm2 += v * v;
    }
    AscentResult stall{shape, 0.0, 0.0};
    if (g_max == 0.0 || shape.morph_range == 0.0) return stall;

    const double cell = shape.du() * shape.dv();
    const double slope = opts.slope_coeff * g_norm2 * cell;
    double step = opts.initial_step_scale * wavelength / g_max;

    SurfaceShape candidate = shape;
    while (step >= opts.min_step) {
        bool moved = false;
        for (std::size_t i = 0; i < n2; ++i) candidate.g[i] = shape.g[i] + step * el_grid[i];
        candidate = project_morph(std::move(candidate));
        for (std::size_t i = 0; i < n2; ++i) {
            if (candidate.g[i] != shape.g[i]) {
                moved = true;
                break;
            }
        }
        if (!moved) return stall; // fully clamped; smaller steps cannot move either
        const double value = objective(candidate);
        if (value >= base_value + step * slope)
            return {std::move(candidate), step, value - base_value};
        step *= opts.shrink;
    }
    return stall;
}

SolveReport solve(const Scenario& scn, const SurfaceShape& initial, const SolveOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    scn.validate();
    if (opts.outer_iterations < 1)
        throw InvalidConfigError("solve: at least one outer iteration required");

    const QuadratureGrid grid = tensor_grid(opts.quadrature_order, scn.length_x, scn.length_z);
    SurfaceShape shape = project_morph(initial);

    ChannelSet ch = build_channels(scn, shape, grid);
    linalg::CMat q = correlation_q(ch, grid);
    AuxVars aux = init_aux(q, scn);

    SolveReport report;
    double prev_surrogate = 0.0;
    int small_changes = 0;

    for (int iter = 0; iter < opts.outer_iterations; ++iter) {
        const FpConstants consts = fp_constants(aux, scn);
        FredholmSolution sol = solve_w(q, consts);
        const double surrogate = surrogate_objective(sol, scn);
        if (!std::isfinite(surrogate))
            throw DegenerateStateError("solve: non-finite objective at iteration " +
                                       std::to_string(iter + 1));
        report.surrogate_trace.push_back(surrogate);
        report.arpu_trace.push_back(wsr(sol, scn).arpu);
        report.iterations = iter + 1;

        aux = update_aux(sol, scn);

        if (iter > 0) {
            const double rel = std::abs(surrogate - prev_surrogate) /
                               std::max(std::abs(prev_surrogate), 1e-300);
            small_changes = rel < opts.early_stop_tol ? small_changes + 1 : 0;
        }
        prev_surrogate = surrogate;
        if (small_changes >= opts.early_stop_hits) break;

        if (shape.morph_range > 0.0) {
            const CurrentField raw = eval_currents(ch, consts, sol);
            const auto gd = dominant_field(ch, raw, consts, sol);
            const auto gd_grid = resample_to_grid(gd, grid, shape);
            const auto fields = finite_diff_fields(shape);
            const auto el = el_residual(gd_grid, fields, shape);

            // The line search re-solves the coefficients per candidate with
            // the freshly updated auxiliaries, so accepted steps never lower
            // the recorded objective.
            const FpConstants eval_consts = fp_constants(aux, scn);
            auto evaluate = [&](const SurfaceShape& cand) {
                const ChannelSet cch = build_channels(scn, cand, grid);
                const linalg::CMat cq = correlation_q(cch, grid);
                return surrogate_objective(solve_w(cq, eval_consts), scn);
            };
            const double base = surrogate_objective(solve_w(q, eval_consts), scn);
            AscentResult res =
                armijo_ascent(shape, el, evaluate, base, scn.wavelength(), opts.armijo);
            if (res.step > 0.0) {
                shape = std::move(res.shape);
                ch = build_channels(scn, shape, grid);
                q = correlation_q(ch, grid);
            }
        }
    }

    // Final refresh: coefficients for the final shape, currents, normalization.
    const FpConstants consts = fp_constants(aux, scn);
    FredholmSolution sol = solve_w(q, consts);
    CurrentField currents = eval_currents(ch, consts, sol);
    currents = normalize_currents(std::move(currents), sol.rho, scn.transmit_power);

    report.shape = std::move(shape);
    report.rates = wsr(sol, scn);
    report.power = current_power(currents, ch);
    report.currents = std::move(currents);
    report.fredholm = std::move(sol);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

} // namespace fcapa
