// SPDX-License-Identifier: Apache-2.0
//
// Closed-form optimal source currents for a fixed surface shape: the
// fractional-programming auxiliary updates, the K x K Fredholm coefficient
// solve, the power identity, current evaluation and normalization, and the
// rate metrics.
//
// Index conventions used throughout (easy to transpose, so fixed here once):
//   w_{k,i} = integral of H_i * J_k * zeta   (current k against channel i),
//   stored as w(k, i): row = current index, column = channel index.
//   The received-signal coefficient of current i at user k is therefore
//   a_i^{(k)} = w(i, k), i.e. column k of W collects what user k hears.
//   q_{i,m}  = integral of H_m * H_i^* * zeta, stored as q(i, m).
// With these layouts the coefficient system reads W = A*Q - W*B*Q with
// A = diag(A_bar), B = diag(B_bar), solved via the transposed form
// (I + Q^T B) W^T = Q^T A.

#pragma once

#include <complex>
#include <vector>

#include "fcapa/em_channel.hpp"
#include "fcapa/linalg.hpp"

namespace fcapa {

struct AuxVars {
    std::vector<double> mu;                    // mu_k >= 1
    std::vector<std::complex<double>> lambda;  // lambda_k
};

struct FpConstants {
    std::vector<std::complex<double>> a_raw;  // A_k = alpha_k mu_k conj(lambda_k)
    std::vector<double> b_raw;                // B_i = alpha_i |lambda_i|^2
    std::vector<double> c_raw;                // C_i = B_i sigma_i^2 / P_T
    std::vector<std::complex<double>> a_bar;  // A_k / sum(C)
    std::vector<double> b_bar;                // B_i / sum(C)
    double c_sum = 0.0;
};

struct FredholmSolution {
    linalg::CMat w;    // w(k,i) = w_{k,i}
    double rho = 0.0;  // total un-normalized current power (trace identity)
};

struct CurrentField {
    kernels::ComplexCols j;    // node x user samples of J_k
    double power_scale = 1.0;  // scaling applied by normalize_currents
};

struct RateReport {
    std::vector<double> sinr;
    std::vector<double> rate;  // log2(1 + sinr)
    double wsr = 0.0;          // sum alpha_k rate_k
    double arpu = 0.0;         // mean rate per user
};

FpConstants fp_constants(const AuxVars& aux, const Scenario& scn);

// Solve (I + Q^T B) W^T = Q^T A and evaluate rho through the trace identity
//   rho = sum_k |A_bar_k|^2 q_kk - 2 Re tr(A Q B W^H) + Re tr(W B Q B W^H).
FredholmSolution solve_w(const linalg::CMat& q, const FpConstants& consts);

// gamma_k = |w_kk|^2 / (sum_{i != k} |w_ik|^2 + (sigma_k^2 / P_T) rho),
// mu_k = sqrt(1 + gamma_k),
// lambda_k = mu_k w_kk / (sum_i |w_ik|^2 + (sigma_k^2 / P_T) rho).
AuxVars update_aux(const FredholmSolution& sol, const Scenario& scn);

// Matched-filter initialization J_k = H_k^*, for which W = Q and the power
// equals Re tr(Q).
AuxVars init_aux(const linalg::CMat& q, const Scenario& scn);

// J(n,k) = A_bar_k conj(H(n,k)) - sum_i B_bar_i conj(H(n,i)) w(k,i),
// evaluated as J = conj(H) * (A - B W^T).
CurrentField eval_currents(const ChannelSet& ch, const FpConstants& consts,
                           const FredholmSolution& sol);

// Scale all currents by sqrt(P_T / rho) so the power constraint is met with
// equality.
CurrentField normalize_currents(CurrentField field, double rho, double transmit_power);

// Per-user SINRs/rates of the power-normalized solution, derived from W and
// rho alone.
RateReport wsr(const FredholmSolution& sol, const Scenario& scn);

// Objective of the unconstrained equivalent problem,
// sum_k alpha_k log2(1 + gamma_k(W, rho)); the solver's convergence trace.
double surrogate_objective(const FredholmSolution& sol, const Scenario& scn);

// Re-integrate w_{k,i} from explicit current samples (consistency checks).
linalg::CMat reintegrate_w(const ChannelSet& ch, const CurrentField& field,
                           const QuadratureGrid& grid);

// sum_k integral of |J_k|^2 zeta via the quadrature rule.
double current_power(const CurrentField& field, const ChannelSet& ch);

} // namespace fcapa
