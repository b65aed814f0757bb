// SPDX-License-Identifier: Apache-2.0

#include "fcapa/em_channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fcapa/errors.hpp"

namespace fcapa {
namespace {

constexpr double min_separation = 1e-9; // m; below this the kernel is singular

}

void Scenario::validate() const {
    if (users.empty()) throw InvalidConfigError("scenario: at least one user required");
    if (frequency <= 0.0) throw InvalidConfigError("scenario: frequency must be positive");
    if (impedance <= 0.0) throw InvalidConfigError("scenario: impedance must be positive");
    if (transmit_power <= 0.0)
        throw InvalidConfigError("scenario: transmit power must be positive");
    if (length_x <= 0.0 || length_z <= 0.0)
        throw InvalidConfigError("scenario: aperture lengths must be positive");
    for (const auto& u : users) {
        const double n2 = u.polarization[0] * u.polarization[0] +
                          u.polarization[1] * u.polarization[1] +
                          u.polarization[2] * u.polarization[2];
        if (std::abs(n2 - 1.0) > 1e-12)
            throw InvalidConfigError("scenario: polarization vectors must be unit length");
        if (u.noise_var <= 0.0)
            throw InvalidConfigError("scenario: noise variances must be positive");
        if (u.weight < 0.0) throw InvalidConfigError("scenario: user weights must be >= 0");
    }
}

Mat3c green_tensor(const Vec3& r, const Vec3& s, double wavelength, double impedance) {
    const double dx = r[0] - s[0];
    const double dy = r[1] - s[1];
    const double dz = r[2] - s[2];
    const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
    if (dist < min_separation)
        throw SingularityError("green_tensor: source and observation points coincide");

    const double phase = -2.0 * std::numbers::pi * dist / wavelength;
    const double amp = impedance / (2.0 * wavelength * dist);
    // -j * e^{j*phase} = sin(phase) - j*cos(phase)
    const std::complex<double> pref{amp * std::sin(phase), -amp * std::cos(phase)};

    const double e[3] = {dx / dist, dy / dist, dz / dist};
    Mat3c g{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            g[std::size_t(3 * i + j)] = pref * ((i == j ? 1.0 : 0.0) - e[i] * e[j]);
    return g;
}

std::complex<double> scalar_channel(const Vec3& r, const Vec3& s, const Vec3& pol,
                                    double wavelength, double impedance) {
    const double dx = r[0] - s[0];
    const double dy = r[1] - s[1];
    const double dz = r[2] - s[2];
    const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
    if (dist < min_separation)
        throw SingularityError("scalar_channel: source and observation points coincide");

    const double inv = 1.0 / dist;
    const double ex = dx * inv, ey = dy * inv, ez = dz * inv;
    // pol^T (I - e e^T) u_z = pol_z - (pol . e) e_z
    const double proj = pol[2] - (pol[0] * ex + pol[1] * ey + pol[2] * ez) * ez;

    const double phase = -2.0 * std::numbers::pi * dist / wavelength;
    const double amp = impedance / (2.0 * wavelength * dist) * proj;
    return {amp * std::sin(phase), -amp * std::cos(phase)};
}

ChannelSet build_channels(const Scenario& scn, const SurfaceShape& shape,
                          const QuadratureGrid& grid) {
    if (std::abs(2.0 * shape.half_length_u - grid.length_x) > 1e-12 * (1.0 + grid.length_x) ||
        std::abs(2.0 * shape.half_length_v - grid.length_z) > 1e-12 * (1.0 + grid.length_z))
        throw DimensionError("build_channels: shape and grid aperture lengths differ");

    const int nodes = grid.node_count();
    const int k = scn.user_count();
    const double wl = scn.wavelength();

    const auto samples = sample_shape(shape, grid.node_u, grid.node_v);

    // Reject users inside the aperture bounding box; the kernel is singular on
    // the surface and the quadrature cannot resolve its neighbourhood.
    double g_min = samples[0].g, g_max = samples[0].g;
    for (const auto& s : samples) {
        g_min = std::min(g_min, s.g);
        g_max = std::max(g_max, s.g);
    }
    for (const auto& user : scn.users) {
        const auto& r = user.position;
        if (std::abs(r[0]) <= 0.5 * grid.length_x + min_separation &&
            std::abs(r[2]) <= 0.5 * grid.length_z + min_separation &&
            r[1] >= g_min - min_separation && r[1] <= g_max + min_separation)
            throw SingularityError("build_channels: user lies inside the aperture region");
    }

    ChannelSet ch;
    ch.h = kernels::ComplexCols(nodes, k);
    ch.zeta.resize(nodes);
    ch.dweights.resize(nodes);
    for (int n = 0; n < nodes; ++n) {
        ch.zeta[n] = samples[n].zeta;
        ch.dweights[n] = grid.weights_2d[n] * samples[n].zeta;
    }
    for (int u = 0; u < k; ++u) {
        const auto& user = scn.users[u];
        double* hr = ch.h.col_re(u);
        double* hi = ch.h.col_im(u);
        for (int n = 0; n < nodes; ++n) {
            const Vec3 s{grid.node_u[n], samples[n].g, grid.node_v[n]};
            const auto v = scalar_channel(user.position, s, user.polarization, wl, scn.impedance);
            hr[n] = v.real();
            hi[n] = v.imag();
        }
    }
    return ch;
}

linalg::CMat correlation_q(const kernels::ComplexCols& h, std::span<const double> dweights) {
    if (static_cast<int>(dweights.size()) != h.rows)
        throw DimensionError("correlation_q: weight count does not match node count");
    const int k = h.cols;
    const int n = h.rows;
    const auto& kt = kernels::active();
    linalg::CMat q(k, k);
    // Q(i,m) = sum_n d[n] conj(H(n,i)) H(n,m); the lower triangle is the
    // conjugate mirror, so compute the upper half only.
    for (int i = 0; i < k; ++i) {
        for (int m = i; m < k; ++m) {
            double re = 0.0, im = 0.0;
            kt.wdot_conj(dweights.data(), h.col_re(i), h.col_im(i), h.col_re(m), h.col_im(m), n,
                         re, im);
            if (i == m) im = 0.0; // diagonal is a weighted norm, real by construction
            q(i, m) = {re, im};
            if (i != m) q(m, i) = {re, -im};
        }
    }
    return q;
}

linalg::CMat correlation_q(const ChannelSet& ch, const QuadratureGrid& grid) {
    if (ch.node_count() != grid.node_count())
        throw DimensionError("correlation_q: channel set not built on this grid");
    return correlation_q(ch.h, ch.dweights);
}

} // namespace fcapa
