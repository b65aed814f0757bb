// SPDX-License-Identifier: Apache-2.0
//
// Test-only oracles, all independent of the library code paths they check:
// adaptive 2-D quadrature, a cyclic-Jacobi Hermitian eigensolver, and random
// test-instance generators.

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "fcapa/em_channel.hpp"
#include "fcapa/linalg.hpp"
#include "fcapa/rng.hpp"

namespace oracles {

// Adaptive Simpson quadrature over [ax,bx] x [ay,by] to absolute tolerance.
double adaptive_integral_2d(const std::function<double(double, double)>& f, double ax, double bx,
                            double ay, double by, double tol);

// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, ascending.
std::vector<double> hermitian_eigenvalues(const fcapa::linalg::CMat& m);

// Uniform random complex matrix with entries in the unit square.
fcapa::linalg::CMat random_cmat(int rows, int cols, fcapa::SplitMix64& rng);

// Random Hermitian PSD matrix A^H A (optionally scaled).
fcapa::linalg::CMat random_psd(int n, fcapa::SplitMix64& rng, double scale = 1.0);

// Random downlink scenario with K users in the default region.
fcapa::Scenario random_scenario(int users, fcapa::SplitMix64& rng);

} // namespace oracles
