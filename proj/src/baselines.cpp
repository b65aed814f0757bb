// SPDX-License-Identifier: Apache-2.0

#include "fcapa/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>

#include "fcapa/errors.hpp"

namespace fcapa {

using linalg::CMat;
using std::complex;

namespace {

// a_mat(k,i) = h_k^H w_i and ||w_i||^2 for beamformers w = h * t, all from the
// Gram matrix: a = G t, norms from t^H G t.
struct KSpaceEval {
    CMat a;
    std::vector<double> wnorm2;
    double total_power = 0.0;
};

KSpaceEval eval_beamformers(const CMat& gram, const CMat& t) {
    KSpaceEval ev;
    ev.a = linalg::matmul(gram, t);
    const int k = gram.rows;
    ev.wnorm2.assign(k, 0.0);
    for (int i = 0; i < k; ++i) {
        complex<double> s{};
        for (int r = 0; r < k; ++r) s += std::conj(t(r, i)) * ev.a(r, i);
        ev.wnorm2[i] = s.real();
        ev.total_power += ev.wnorm2[i];
    }
    return ev;
}

RateReport discrete_rates(const KSpaceEval& ev, const Scenario& scn) {
    const int k = scn.user_count();
    RateReport rep;
    rep.sinr.resize(k);
    rep.rate.resize(k);
    for (int u = 0; u < k; ++u) {
        double interf = 0.0;
        for (int i = 0; i < k; ++i)
            if (i != u) interf += std::norm(ev.a(u, i));
        const double b = scn.users[u].noise_var / scn.transmit_power * ev.total_power;
        const double den = interf + b;
        rep.sinr[u] = den > 0.0 ? std::norm(ev.a(u, u)) / den : 0.0;
        rep.rate[u] = std::log2(1.0 + rep.sinr[u]);
        rep.wsr += scn.users[u].weight * rep.rate[u];
        rep.arpu += rep.rate[u];
    }
    rep.arpu /= k;
    return rep;
}

AuxVars discrete_aux(const KSpaceEval& ev, const Scenario& scn) {
    const int k = scn.user_count();
    AuxVars aux;
    aux.mu.resize(k);
    aux.lambda.resize(k);
    for (int u = 0; u < k; ++u) {
        double interf = 0.0;
        for (int i = 0; i < k; ++i)
            if (i != u) interf += std::norm(ev.a(u, i));
        const double direct = std::norm(ev.a(u, u));
        const double b = scn.users[u].noise_var / scn.transmit_power * ev.total_power;
        if (interf + b <= 0.0 && direct <= 0.0)
            throw DegenerateStateError("discrete fp: zero-signal state");
        const double gamma = direct / (interf + b);
        aux.mu[u] = std::sqrt(1.0 + gamma);
        aux.lambda[u] = aux.mu[u] * ev.a(u, u) / (interf + direct + b);
    }
    return aux;
}

// w_k = conj(A_k) (sum_i B_i h_i h_i^H + c I)^{-1} h_k, reduced to K-space via
// the matrix inversion lemma: M^{-1} h_k = (h_k - H_S y_k) / c with
// (c B_S^{-1} + G_SS) y_k = G(S, k) over the support S = {i : B_i > 0}.
CMat fp_beamformer_update(const CMat& gram, const FpConstants& consts) {
    const int k = gram.rows;
    const double c = consts.c_sum;
    std::vector<int> support;
    for (int i = 0; i < k; ++i)
        if (consts.b_raw[i] > 0.0) support.push_back(i);
    if (support.empty()) throw DegenerateStateError("discrete fp: empty beamformer support");
    const int s = static_cast<int>(support.size());

    CMat m(s, s), rhs(s, k);
    for (int a = 0; a < s; ++a) {
        for (int b = 0; b < s; ++b) m(a, b) = gram(support[a], support[b]);
        m(a, a) += c / consts.b_raw[support[a]];
        for (int j = 0; j < k; ++j) rhs(a, j) = gram(support[a], j);
    }
    const CMat y = linalg::solve(m, rhs);

    CMat t(k, k);
    for (int col = 0; col < k; ++col) {
        const complex<double> scale = std::conj(consts.a_raw[col]) / c;
        t(col, col) += scale;
        for (int a = 0; a < s; ++a) t(support[a], col) -= scale * y(a, col);
    }
    return t;
}

void normalize_power(CMat& t, const CMat& gram, double transmit_power) {
    const KSpaceEval ev = eval_beamformers(gram, t);
    if (!(ev.total_power > 0.0))
        throw DegenerateStateError("discrete precoder: zero total power");
    const double scale = std::sqrt(transmit_power / ev.total_power);
    for (auto& v : t.a) v *= scale;
}

CMat mrt_coefficients(const CMat& gram, const Scenario& scn) {
    CMat t = CMat::identity(gram.rows);
    normalize_power(t, gram, scn.transmit_power);
    return t;
}

std::vector<complex<double>> channel_row(const DiscreteArray& arr, const Scenario& scn, int n,
                                         double height) {
    const int k = scn.user_count();
    const double root_area = std::sqrt(arr.element_area);
    const Vec3 s{arr.positions[n][0], height, arr.positions[n][2]};
    std::vector<complex<double>> row(k);
    for (int u = 0; u < k; ++u)
        row[u] = root_area * arr.zeta[n] *
                 scalar_channel(scn.users[u].position, s, scn.users[u].polarization,
                                scn.wavelength(), scn.impedance);
    return row;
}

void update_gram_row(CMat& gram, std::span<const complex<double>> old_row,
                     std::span<const complex<double>> new_row) {
    const int k = gram.rows;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            gram(i, j) +=
                std::conj(new_row[i]) * new_row[j] - std::conj(old_row[i]) * old_row[j];
}

} // namespace

DiscreteArray build_discrete_array(const Scenario& scn, const SurfaceShape* shape) {
    const double wl = scn.wavelength();
    DiscreteArray arr;
    arr.spacing = 0.5 * wl;
    arr.element_area = wl * wl / (4.0 * std::numbers::pi);
    arr.count_x = static_cast<int>(std::ceil(scn.length_x / arr.spacing));
    arr.count_z = static_cast<int>(std::ceil(scn.length_z / arr.spacing));
    arr.morph_range = shape ? shape->morph_range : 0.0;

    const int n = arr.count();
    arr.positions.resize(n);
    arr.zeta.assign(n, 1.0);
    arr.ref_height.assign(n, 0.0);

    std::vector<double> us(n), vs(n);
    for (int iz = 0; iz < arr.count_z; ++iz) {
        for (int ix = 0; ix < arr.count_x; ++ix) {
            const int idx = iz * arr.count_x + ix;
            us[idx] = ix * arr.spacing - 0.5 * scn.length_x;
            vs[idx] = iz * arr.spacing - 0.5 * scn.length_z;
        }
    }
    if (shape) {
        const auto samples = sample_shape(*shape, us, vs);
        for (int i = 0; i < n; ++i) {
            arr.ref_height[i] = samples[i].g;
            arr.zeta[i] = samples[i].zeta;
        }
    }
    for (int i = 0; i < n; ++i) arr.positions[i] = {us[i], arr.ref_height[i], vs[i]};
    return arr;
}

DiscreteChannel discrete_channels(const DiscreteArray& arr, const Scenario& scn) {
    const int n = arr.count();
    const int k = scn.user_count();
    DiscreteChannel ch;
    ch.h = kernels::ComplexCols(n, k);
    for (int e = 0; e < n; ++e) {
        const auto row = channel_row(arr, scn, e, arr.positions[e][1]);
        for (int u = 0; u < k; ++u) ch.h.set(e, u, row[u]);
    }
    return ch;
}

CMat discrete_gram(const DiscreteChannel& ch) {
    const int k = ch.h.cols;
    const int n = ch.h.rows;
    const std::vector<double> unit(n, 1.0);
    const auto& kt = kernels::active();
    CMat g(k, k);
    for (int i = 0; i < k; ++i) {
        for (int m = i; m < k; ++m) {
            double re = 0.0, im = 0.0;
            kt.wdot_conj(unit.data(), ch.h.col_re(i), ch.h.col_im(i), ch.h.col_re(m),
                         ch.h.col_im(m), n, re, im);
            if (i == m) im = 0.0;
            g(i, m) = {re, im};
            if (i != m) g(m, i) = {re, -im};
        }
    }
    return g;
}

CMat zf_coefficients(const CMat& gram, const Scenario& scn) {
    const int k = gram.rows;
    CMat inv;
    try {
        inv = linalg::solve(gram, CMat::identity(k), 1e12);
    } catch (const ConditioningError&) {
        throw RankError("zero forcing: channel matrix is rank deficient");
    }
    CMat t(k, k);
    const double per_user = scn.transmit_power / k;
    for (int col = 0; col < k; ++col) {
        const double norm2 = inv(col, col).real();
        if (!(norm2 > 0.0)) throw RankError("zero forcing: non-positive direction norm");
        const double scale = std::sqrt(per_user / norm2);
        for (int r = 0; r < k; ++r) t(r, col) = inv(r, col) * scale;
    }
    return t;
}

double zf_wsr(const DiscreteChannel& ch, const Scenario& scn) {
    if (ch.h.rows < scn.user_count())
        throw RankError("zero forcing: fewer elements than users");
    const CMat gram = discrete_gram(ch);
    const CMat t = zf_coefficients(gram, scn);
    return discrete_rates(eval_beamformers(gram, t), scn).arpu;
}

DiscreteFpResult fp_solve(const CMat& gram, const Scenario& scn, const DiscreteFpOptions& opts) {
    DiscreteFpResult result;
    CMat t;
    try {
        t = zf_coefficients(gram, scn);
    } catch (const RankError&) {
        t = mrt_coefficients(gram, scn);
    }
    KSpaceEval ev = eval_beamformers(gram, t);
    AuxVars aux = discrete_aux(ev, scn);

    double prev = discrete_rates(ev, scn).wsr;
    for (int it = 0; it < opts.iterations; ++it) {
        const FpConstants consts = fp_constants(aux, scn);
        t = fp_beamformer_update(gram, consts);
        normalize_power(t, gram, scn.transmit_power);
        ev = eval_beamformers(gram, t);
        const double objective = discrete_rates(ev, scn).wsr;
        result.objective_trace.push_back(objective);
        result.iterations = it + 1;
        aux = discrete_aux(ev, scn);
        if (std::abs(objective - prev) < opts.tolerance * std::max(std::abs(prev), 1.0)) break;
        prev = objective;
    }
    result.rates = discrete_rates(ev, scn);
    result.t = std::move(t);
    return result;
}

double fp_wsr(const DiscreteChannel& ch, const Scenario& scn) {
    return fp_solve(discrete_gram(ch), scn).rates.arpu;
}

SolveReport rigid_capa(const Scenario& scn, const SolveOptions& opts, int grid_resolution) {
    const SurfaceShape flat =
        make_flat_shape(scn.length_x, scn.length_z, grid_resolution, 0.0);
    return solve(scn, flat, opts);
}

double rigid_capa_wsr(const Scenario& scn, const SolveOptions& opts, int grid_resolution) {
    return rigid_capa(scn, opts, grid_resolution).rates.arpu;
}

namespace {

MimoReport single_precoder_solve(const CMat& gram, const Scenario& scn, const MimoOptions& opts,
                                 std::vector<double> heights) {
    MimoReport rep;
    if (opts.beamformer == Beamformer::zero_forcing) {
        const CMat t = zf_coefficients(gram, scn);
        const KSpaceEval ev = eval_beamformers(gram, t);
        rep.rates = discrete_rates(ev, scn);
        rep.power = ev.total_power;
        rep.iterations = 1;
        rep.objective_trace.push_back(rep.rates.wsr);
    } else {
        const DiscreteFpResult fp = fp_solve(gram, scn, opts.fp);
        rep.rates = fp.rates;
        rep.power = eval_beamformers(gram, fp.t).total_power;
        rep.iterations = fp.iterations;
        rep.objective_trace = fp.objective_trace;
    }
    rep.arpu = rep.rates.arpu;
    rep.heights = std::move(heights);
    return rep;
}

} // namespace

MimoReport conventional_mimo(const Scenario& scn, const MimoOptions& opts) {
    const DiscreteArray arr = build_discrete_array(scn, nullptr);
    const DiscreteChannel ch = discrete_channels(arr, scn);
    return single_precoder_solve(discrete_gram(ch), scn, opts, arr.ref_height);
}

MimoReport flexible_mimo(const Scenario& scn, const SurfaceShape& reference,
                         const MimoOptions& opts) {
    const DiscreteArray arr = build_discrete_array(scn, &reference);
    DiscreteChannel ch = discrete_channels(arr, scn);
    CMat gram = discrete_gram(ch);
    if (arr.morph_range == 0.0)
        return single_precoder_solve(gram, scn, opts, arr.ref_height);

    const int n = arr.count();
    const int k = scn.user_count();
    const double half_band = 0.5 * arr.morph_range;
    const double fd_step = opts.fd_step_scale * scn.wavelength();
    std::vector<double> heights = arr.ref_height;

    const bool use_fp = opts.beamformer == Beamformer::fractional_programming;
    AuxVars aux;
    if (use_fp) {
        const DiscreteFpResult warm = fp_solve(gram, scn, opts.fp);
        aux = discrete_aux(eval_beamformers(gram, warm.t), scn);
    }

    // Precoder objective with the beamformer re-solved for a candidate Gram
    // matrix; for the FP precoder the auxiliaries stay fixed during the shape
    // line search (envelope evaluation). Candidates that break the precoder
    // (rank loss under zero forcing) score minus infinity.
    auto evaluate = [&](const CMat& g, const FpConstants* consts) {
        try {
            CMat t = consts ? fp_beamformer_update(g, *consts) : zf_coefficients(g, scn);
            return discrete_rates(eval_beamformers(g, t), scn).wsr;
        } catch (const Error&) {
            return -std::numeric_limits<double>::infinity();
        }
    };
    auto rebuild = [&](const std::vector<double>& y, DiscreteChannel& out_ch, CMat& out_g) {
        out_ch.h = kernels::ComplexCols(n, k);
        for (int e = 0; e < n; ++e) {
            const auto row = channel_row(arr, scn, e, y[e]);
            for (int u = 0; u < k; ++u) out_ch.h.set(e, u, row[u]);
        }
        out_g = discrete_gram(out_ch);
    };

    MimoReport rep;
    double prev_obj = 0.0;
    int small_changes = 0;
    for (int iter = 0; iter < opts.outer_iterations; ++iter) {
        double objective = 0.0;
        FpConstants consts;
        if (use_fp) {
            consts = fp_constants(aux, scn);
            CMat t = fp_beamformer_update(gram, consts);
            normalize_power(t, gram, scn.transmit_power);
            const KSpaceEval ev = eval_beamformers(gram, t);
            objective = discrete_rates(ev, scn).wsr;
            aux = discrete_aux(ev, scn);
            consts = fp_constants(aux, scn);
        } else {
            objective = evaluate(gram, nullptr);
        }
        rep.objective_trace.push_back(objective);
        rep.iterations = iter + 1;
        if (iter > 0) {
            const double rel =
                std::abs(objective - prev_obj) / std::max(std::abs(prev_obj), 1e-300);
            small_changes = rel < opts.early_stop_tol ? small_changes + 1 : 0;
        }
        prev_obj = objective;
        if (small_changes >= opts.early_stop_hits) break;

        const FpConstants* consts_ptr = use_fp ? &consts : nullptr;
        const double base = evaluate(gram, consts_ptr);

        // Central-difference gradient over element heights via rank-one Gram
        // row updates; O(K^2 + K^3) per element, independent of the count.
        std::vector<double> grad(n, 0.0);
        std::vector<complex<double>> old_row(k);
        double g_max = 0.0, g_norm2 = 0.0;
        for (int e = 0; e < n; ++e) {
            for (int u = 0; u < k; ++u) old_row[u] = ch.h.at(e, u);
            double values[2];
            for (int sgn = 0; sgn < 2; ++sgn) {
                const double y = heights[e] + (sgn == 0 ? fd_step : -fd_step);
                const auto row = channel_row(arr, scn, e, y);
                CMat g2 = gram;
                update_gram_row(g2, old_row, row);
                values[sgn] = evaluate(g2, consts_ptr);
            }
            grad[e] = (values[0] - values[1]) / (2.0 * fd_step);
            g_max = std::max(g_max, std::abs(grad[e]));
            g_norm2 += grad[e] * grad[e];
        }
        if (g_max == 0.0) continue;

        double step = opts.armijo.initial_step_scale * scn.wavelength() / g_max;
        const double slope = opts.armijo.slope_coeff * g_norm2;
        std::vector<double> cand(n);
        DiscreteChannel cand_ch;
        CMat cand_g;
        while (step >= opts.armijo.min_step) {
            bool moved = false;
            for (int e = 0; e < n; ++e) {
                cand[e] = std::clamp(heights[e] + step * grad[e], arr.ref_height[e] - half_band,
                                     arr.ref_height[e] + half_band);
                moved = moved || cand[e] != heights[e];
            }
            if (!moved) break;
            rebuild(cand, cand_ch, cand_g);
            if (evaluate(cand_g, consts_ptr) >= base + step * slope) {
                heights = cand;
                ch = std::move(cand_ch);
                gram = std::move(cand_g);
                break;
            }
            step *= opts.armijo.shrink;
        }
    }

    // Final precoder solve on the morphed geometry.
    MimoReport final_rep = single_precoder_solve(gram, scn, opts, heights);
    final_rep.iterations = rep.iterations;
    rep.objective_trace.insert(rep.objective_trace.end(),
                               final_rep.objective_trace.begin(),
                               final_rep.objective_trace.end());
    final_rep.objective_trace = std::move(rep.objective_trace);
    return final_rep;
}

} // namespace fcapa
