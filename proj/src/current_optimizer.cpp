// SPDX-License-Identifier: Apache-2.0

#include "fcapa/current_optimizer.hpp"

#include <cmath>

#include "fcapa/errors.hpp"

namespace fcapa {

using linalg::CMat;
using std::complex;

FpConstants fp_constants(const AuxVars& aux, const Scenario& scn) {
    const int k = scn.user_count();
    if (static_cast<int>(aux.mu.size()) != k || static_cast<int>(aux.lambda.size()) != k)
        throw DimensionError("fp_constants: auxiliary variable length mismatch");

    FpConstants c;
    c.a_raw.resize(k);
    c.b_raw.resize(k);
    c.c_raw.resize(k);
    c.a_bar.resize(k);
    c.b_bar.resize(k);
    double c_sum = 0.0;
    for (int i = 0; i < k; ++i) {
        const double alpha = scn.users[i].weight;
        const double lam2 = std::norm(aux.lambda[i]);
        c.a_raw[i] = alpha * aux.mu[i] * std::conj(aux.lambda[i]);
        c.b_raw[i] = alpha * lam2;
        c.c_raw[i] = c.b_raw[i] * scn.users[i].noise_var / scn.transmit_power;
        c_sum += c.c_raw[i];
    }
    if (!(c_sum > 0.0) || !std::isfinite(c_sum))
        throw DegenerateStateError("fp_constants: all auxiliary lambda are zero");
    c.c_sum = c_sum;
    for (int i = 0; i < k; ++i) {
        c.a_bar[i] = c.a_raw[i] / c_sum;
        c.b_bar[i] = c.b_raw[i] / c_sum;
    }
    return c;
}

FredholmSolution solve_w(const CMat& q, const FpConstants& consts) {
    const int k = q.rows;
    if (q.cols != k) throw DimensionError("solve_w: correlation matrix must be square");
    if (static_cast<int>(consts.a_bar.size()) != k)
        throw DimensionError("solve_w: constants length mismatch");

    // (I + Q^T B) X = Q^T A with X = W^T.
    CMat m(k, k);
    CMat rhs(k, k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            const complex<double> qt = q(j, i); // Q^T
            m(i, j) = qt * consts.b_bar[j] + (i == j ? 1.0 : 0.0);
            rhs(i, j) = qt * consts.a_bar[j];
        }
    }
    FredholmSolution sol;
    sol.w = linalg::transpose(linalg::solve(m, rhs));

    // Power via the trace identity, kept in factored form: with
    // T = A - B W^T the three expanded terms are tr(T^H Q^T T), a quadratic
    // form in the PSD matrix Q^T. Evaluating it factored avoids the severe
    // cancellation between the expanded terms.
    CMat t(k, k);
    for (int i = 0; i < k; ++i)
        for (int col = 0; col < k; ++col) {
            complex<double> v = -consts.b_bar[i] * sol.w(col, i);
            if (i == col) v += consts.a_bar[col];
            t(i, col) = v;
        }
    double rho = 0.0;
    for (int col = 0; col < k; ++col) {
        complex<double> quad{};
        for (int i = 0; i < k; ++i) {
            // y_i = sum_j Q^T(i,j) t(j,col) = sum_j q(j,i) t(j,col)
            complex<double> y{};
            for (int j = 0; j < k; ++j) y += q(j, i) * t(j, col);
            quad += std::conj(t(i, col)) * y;
        }
        rho += quad.real();
    }
    if (rho < 0.0) {
        // Quadratic form in a PSD matrix; negatives are rounding residue.
        if (rho < -1e-9 * (1.0 + std::abs(rho)))
            throw DegenerateStateError("solve_w: negative power from trace identity");
        rho = 0.0;
    }
    sol.rho = rho;
    return sol;
}

AuxVars update_aux(const FredholmSolution& sol, const Scenario& scn) {
    const int k = scn.user_count();
    if (sol.w.rows != k || sol.w.cols != k)
        throw DimensionError("update_aux: solution dimension mismatch");
    if (sol.rho < 0.0) throw DegenerateStateError("update_aux: negative power");

    AuxVars aux;
    aux.mu.resize(k);
    aux.lambda.resize(k);
    for (int u = 0; u < k; ++u) {
        // Column u of W holds a_i^{(u)} = w(i,u): what user u receives.
        double interf = 0.0;
        for (int i = 0; i < k; ++i)
            if (i != u) interf += std::norm(sol.w(i, u));
        const double direct = std::norm(sol.w(u, u));
        const double b = scn.users[u].noise_var / scn.transmit_power * sol.rho;
        const double den = interf + b;
        if (den <= 0.0 && direct <= 0.0)
            throw DegenerateStateError("update_aux: zero-signal state");
        const double gamma = direct / den;
        aux.mu[u] = std::sqrt(1.0 + gamma);
        aux.lambda[u] = aux.mu[u] * sol.w(u, u) / (interf + direct + b);
    }
    return aux;
}

AuxVars init_aux(const CMat& q, const Scenario& scn) {
    FredholmSolution start;
    start.w = q;
    start.rho = linalg::trace(q).real();
    return update_aux(start, scn);
}

CurrentField eval_currents(const ChannelSet& ch, const FpConstants& consts,
                           const FredholmSolution& sol) {
    const int k = ch.user_count();
    const int nodes = ch.node_count();
    if (sol.w.rows != k || static_cast<int>(consts.a_bar.size()) != k)
        throw DimensionError("eval_currents: dimension mismatch");

    const auto& kt = kernels::active();
    CurrentField field;
    field.j = kernels::ComplexCols(nodes, k);
    for (int cur = 0; cur < k; ++cur) {
        double* jr = field.j.col_re(cur);
        double* ji = field.j.col_im(cur);
        for (int i = 0; i < k; ++i) {
            // t = A_bar_k delta_{ik} - B_bar_i w(k,i); J_k += t * conj(H_i)
            complex<double> t = -consts.b_bar[i] * sol.w(cur, i);
            if (i == cur) t += consts.a_bar[cur];
            kt.axpy_conj(t.real(), t.imag(), ch.h.col_re(i), ch.h.col_im(i), jr, ji, nodes);
        }
    }
    return field;
}

CurrentField normalize_currents(CurrentField field, double rho, double transmit_power) {
    if (!(rho > 0.0)) throw DegenerateStateError("normalize_currents: zero total power");
    const double scale = std::sqrt(transmit_power / rho);
    field.j.scale(scale);
    field.power_scale *= scale;
    return field;
}

RateReport wsr(const FredholmSolution& sol, const Scenario& scn) {
    const int k = scn.user_count();
    RateReport rep;
    rep.sinr.resize(k);
    rep.rate.resize(k);
    for (int u = 0; u < k; ++u) {
        double interf = 0.0;
        for (int i = 0; i < k; ++i)
            if (i != u) interf += std::norm(sol.w(i, u));
        const double b = scn.users[u].noise_var / scn.transmit_power * sol.rho;
        const double den = interf + b;
        rep.sinr[u] = den > 0.0 ? std::norm(sol.w(u, u)) / den : 0.0;
        rep.rate[u] = std::log2(1.0 + rep.sinr[u]);
        rep.wsr += scn.users[u].weight * rep.rate[u];
        rep.arpu += rep.rate[u];
    }
    rep.arpu /= k;
    return rep;
}

double surrogate_objective(const FredholmSolution& sol, const Scenario& scn) {
    return wsr(sol, scn).wsr;
}

CMat reintegrate_w(const ChannelSet& ch, const CurrentField& field, const QuadratureGrid& grid) {
    if (ch.node_count() != grid.node_count() || field.j.rows != ch.node_count())
        throw DimensionError("reintegrate_w: dimension mismatch");
    const int k = ch.user_count();
    const auto& kt = kernels::active();
    CMat w(k, k);
    for (int cur = 0; cur < k; ++cur) {
        for (int i = 0; i < k; ++i) {
            double re = 0.0, im = 0.0;
            kt.wdot(ch.dweights.data(), ch.h.col_re(i), ch.h.col_im(i), field.j.col_re(cur),
                    field.j.col_im(cur), ch.node_count(), re, im);
            w(cur, i) = {re, im};
        }
    }
    return w;
}

double current_power(const CurrentField& field, const ChannelSet& ch) {
    if (field.j.rows != ch.node_count())
        throw DimensionError("current_power: dimension mismatch");
    const auto& kt = kernels::active();
    double power = 0.0;
    for (int cur = 0; cur < field.j.cols; ++cur)
        power += kt.wnorm2(ch.dweights.data(), field.j.col_re(cur), field.j.col_im(cur),
                           ch.node_count());
    return power;
}

} // namespace fcapa
