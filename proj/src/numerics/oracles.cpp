// SPDX-License-Identifier: Apache-2.0
//
// vsp - Smith-Purcell radiation from vortex electron wave packets
// Copyright (C) 2026 The vsp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "vsp/numerics/oracles.hpp"

#include <array>
#include <cmath>
#include <complex>

#include "vsp/errors.hpp"

namespace vsp::numerics {

namespace {

using cplx = std::complex<double>;

double log_measure(double dp) { return 3.0 * std::log(dp) - 3.0 * std::log(kTwoPi); }

} // namespace

OracleMoment oracle_moment_quadrature(const PacketModel& packet, MomentKind kind,
                                      const QuadratureSpec& spec) {
    spec.validate();
    const double dp = packet.delta_p();
    const Box box = packet_support_box(packet);
    // psi rescaled so that int d^3u |phi|^2 = 1.
    const double scale = std::exp(0.5 * log_measure(dp));
    auto phi = [&](const Vec3& u) { return scale * packet.amplitude_at({u[0] * dp, u[1] * dp, u[2] * dp}); };

    OracleMoment out;
    if (kind == MomentKind::normalization) {
        auto f = [&](std::span<const double> u) { return std::norm(phi({u[0], u[1], u[2]})); };
        const auto r = integrate_box(f, box, spec);
        out.scalar = r.value;
        out.error = r.error;
        return out;
    }

    const double h = 1e-4;
    const Vec3 mean = packet.mean_momentum();
    // 0..2: Im(phi* d_i phi); 3..8: Re(d_i phi* d_j phi) for i <= j; 9: Im(phi* (p_x d_y - p_y d_x) phi) / dp
    auto f = [&](std::span<const double> v) {
        const Vec3 u{v[0], v[1], v[2]};
        const cplx c = phi(u);
        std::array<cplx, 3> grad;
        for (std::size_t i = 0; i < 3; ++i) {
            Vec3 up = u;
            Vec3 um = u;
            up[i] += h;
            um[i] -= h;
            grad[i] = (phi(up) - phi(um)) / (2.0 * h);
        }
        std::array<double, 10> out{};
        for (std::size_t i = 0; i < 3; ++i) out[i] = std::imag(std::conj(c) * grad[i]);
        std::size_t n = 3;
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = i; j < 3; ++j) out[n++] = std::real(std::conj(grad[i]) * grad[j]);
        }
        const double px = mean[0] / dp + u[0];
        const double py = mean[1] / dp + u[1];
        out[9] = std::imag(std::conj(c) * (px * grad[1] - py * grad[0]));
        return out;
    };
    const auto r = integrate_box(f, box, spec);
    out.error = r.error;
    const double sigma = packet.sigma_perp();

    // <x_i> = Re int psi* i d_i psi = -Im int psi* d_i psi, with d/dp = (1/dp) d/du.
    Vec3 d{};
    for (std::size_t i = 0; i < 3; ++i) d[i] = -sigma * r.value[i];

    switch (kind) {
    case MomentKind::dipole:
        out.vector = d;
        break;
    case MomentKind::quadrupole: {
        Mat3 second{};
        std::size_t n = 3;
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = i; j < 3; ++j) {
                second[i][j] = sigma * sigma * r.value[n++] - d[i] * d[j];
                second[j][i] = second[i][j];
            }
        }
        const double r2 = second[0][0] + second[1][1] + second[2][2];
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                out.tensor[i][j] = 3.0 * second[i][j] - (i == j ? r2 : 0.0);
            }
        }
        break;
    }
    case MomentKind::magnetic:
        // L_z = Re int psi* i (p_y d_x - p_x d_y) psi; the dp factors cancel.
        out.scalar = r.value[9];
        out.vector = {0.0, 0.0, 0.5 * out.scalar * kComptonWavelength};
        break;
    case MomentKind::normalization:
        break;
    }
    return out;
}

DenseAverage oracle_dense_z_average(double z_max, double z_R, int n_strips) {
    if (!(z_max > 0.0) || !(z_R > 0.0)) throw DomainError("oracle_dense_z_average: lengths must be positive");
    if (n_strips < 1) throw DomainError("oracle_dense_z_average: need at least one strip");
    const double d = z_max / n_strips;
    double sum = 0.0;
    for (int m = 0; m < n_strips; ++m) {
        const double z = m * d / z_R;
        sum += z * z;
    }
    return {sum / n_strips, z_max * z_max / (3.0 * z_R * z_R)};
}

} // namespace vsp::numerics
