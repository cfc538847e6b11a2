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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "vsp/errors.hpp"
#include "vsp/numerics/kernels.hpp"
#include "vsp/numerics/oracles.hpp"
#include "vsp/wavepacket.hpp"

using namespace vsp;

namespace {

const Vec3 kMean = axial_momentum(kinematics_from_beta(0.5));
constexpr double kDp = 1e7;  // 1 / (100 nm)

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

double oracle_norm(const PacketModel& p) {
    return numerics::oracle_moment_quadrature(p, numerics::MomentKind::normalization, {1e-8, 1e-14, 4000}).scalar;
}

// |psi(x)|^2 by direct quadrature of int d^3p/(2 pi)^3 psi(p) e^{i p.x}, up to a global phase.
double position_density(const PacketModel& packet, const Vec3& x) {
    const double dp = packet.delta_p();
    const double measure = std::pow(dp / kTwoPi, 3);
    auto f = [&](std::span<const double> u) {
        const Vec3 k{u[0] * dp, u[1] * dp, u[2] * dp};
        const auto v = packet.amplitude_at(k) * std::polar(measure, k[0] * x[0] + k[1] * x[1] + k[2] * x[2]);
        return std::array<double, 2>{v.real(), v.imag()};
    };
    const auto r = numerics::integrate_box(f, packet_support_box(packet), {1e-8, 1e-16, 4000});
    return r.value[0] * r.value[0] + r.value[1] * r.value[1];
}

// int d^3x n(x, p, t) by Gauss-Hermite about the classical position u(p) t.
double momentum_marginal(const PacketModel& packet, const Vec3& p, double t, int nodes) {
    const auto gh = numerics::gauss_hermite(nodes);
    const double e = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + kElectronMass * kElectronMass);
    const double s = packet.sigma_perp();
    double sum = 0.0;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i)
        for (std::size_t j = 0; j < gh.nodes.size(); ++j)
            for (std::size_t k = 0; k < gh.nodes.size(); ++k) {
                const double a = gh.nodes[i], b = gh.nodes[j], c = gh.nodes[k];
                const Vec3 x{p[0] / e * t + s * a, p[1] / e * t + s * b, p[2] / e * t + s * c};
                sum += gh.weights[i] * gh.weights[j] * gh.weights[k] * std::exp(a * a + b * b + c * c) *
                       wigner(packet, x, p, t);
            }
    return sum * s * s * s;
}

// int d^3p/(2 pi)^3 n(x, p, 0) by Gauss-Hermite in k / dp.
double position_marginal(const PacketModel& packet, const Vec3& x, int nodes) {
    const auto gh = numerics::gauss_hermite(nodes);
    const double dp = packet.delta_p();
    const Vec3& m = packet.mean_momentum();
    double sum = 0.0;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i)
        for (std::size_t j = 0; j < gh.nodes.size(); ++j)
            for (std::size_t k = 0; k < gh.nodes.size(); ++k) {
                const double a = gh.nodes[i], b = gh.nodes[j], c = gh.nodes[k];
                const Vec3 p{m[0] + dp * a, m[1] + dp * b, m[2] + dp * c};
                sum += gh.weights[i] * gh.weights[j] * gh.weights[k] * std::exp(a * a + b * b + c * c) *
                       wigner(packet, x, p, 0.0);
            }
    return sum * std::pow(dp / kTwoPi, 3);
}

const std::vector<Vec3> kProbeK = {
    {0.0, 0.0, 0.0}, {0.4 * kDp, 0.0, 0.0}, {0.3 * kDp, -0.8 * kDp, 0.2 * kDp},
    {-1.1 * kDp, 0.5 * kDp, -0.6 * kDp}, {0.9 * kDp, 0.9 * kDp, 0.9 * kDp}};

const std::vector<Vec3> kProbeX = {
    {0.0, 0.0, 0.0}, {50e-9, 0.0, 0.0}, {-30e-9, 80e-9, 20e-9},
    {120e-9, -40e-9, -60e-9}, {70e-9, 70e-9, 70e-9}};

Vec3 absolute(const PacketModel& p, const Vec3& k) {
    return {p.mean_momentum()[0] + k[0], p.mean_momentum()[1] + k[1], p.mean_momentum()[2] + k[2]};
}

} // namespace

TEST_CASE("gaussian packet construction") {
    auto g = make_gaussian_packet(kMean, kDp);
    CHECK(g.sigma_perp() == doctest::Approx(100e-9).epsilon(1e-14));
    CHECK(g.kind() == PacketKind::gaussian);
    CHECK(g.oam() == 0);
    CHECK(std::abs(oracle_norm(g) - 1) < 1e-6);
    CHECK(norm3(mean_dipole(g)) < 1e-12 * g.sigma_perp());
    CHECK_THROWS_AS(make_gaussian_packet(kMean, 0.0), DomainError);
    CHECK_THROWS_AS(make_gaussian_packet(kMean, -1.0), DomainError);
}

TEST_CASE("vortex packet construction") {
    auto v = make_vortex_packet(kMean, kDp, 10);
    CHECK(std::abs(oracle_norm(v) - 1) < 1e-6);
    CHECK(std::abs(oracle_norm(make_vortex_packet(kMean, 3e7, -4)) - 1) < 1e-6);
    for (int ell : {1, -3, 10}) {
        auto p = make_vortex_packet(kMean, kDp, ell);
        CHECK(p.modulus_at({0.0, 0.0, 0.0}) == 0.0);
        CHECK(p.modulus_at({0.0, 0.0, 0.7 * kDp}) == 0.0);
    }
    // phase winding by 2 pi l around the axis
    double winding = 0.0;
    const int steps = 400;
    for (int i = 0; i < steps; ++i) {
        const double a0 = kTwoPi * i / steps, a1 = kTwoPi * (i + 1) / steps;
        const double f0 = v.phase_at({kDp * std::cos(a0), kDp * std::sin(a0), 0.0});
        const double f1 = v.phase_at({kDp * std::cos(a1), kDp * std::sin(a1), 0.0});
        winding += std::remainder(f1 - f0, kTwoPi);
    }
    CHECK(winding == doctest::Approx(kTwoPi * 10).epsilon(1e-12));
    CHECK_THROWS_AS(make_vortex_packet(kMean, kDp, 0), DomainError);
    CHECK_THROWS_AS(make_vortex_packet({1e5, 0.0, 1e12}, kDp, 2), DomainError);
}

TEST_CASE("spreading time and rayleigh length") {
    auto v = make_vortex_packet(kMean, kDp, 10);
    CHECK(spreading_time(v) == doctest::Approx(2.5896e-3).epsilon(1e-4));
    auto v2 = make_vortex_packet(kMean, kDp / 2, 10);
    CHECK(spreading_time(v2) == doctest::Approx(4 * spreading_time(v)).epsilon(1e-14));
    CHECK(rayleigh_length(v, kinematics_from_beta(0.5)) == doctest::Approx(1.2948e-3).epsilon(1e-3));
    auto v4 = make_vortex_packet(kMean, 1 / 20e-9, 10);
    CHECK(rayleigh_length(v4, kinematics_from_beta(0.676)) == doctest::Approx(70.02e-6).epsilon(1e-3));
    auto v20 = make_vortex_packet(kMean, kDp, 20);
    CHECK(rayleigh_length(v20, kinematics_from_beta(0.5)) ==
          doctest::Approx(0.5 * rayleigh_length(v, kinematics_from_beta(0.5))).epsilon(1e-14));
    CHECK_THROWS_AS(spreading_time(make_gaussian_packet(kMean, kDp)), DomainError);
    CHECK_THROWS_AS(rayleigh_length(make_gaussian_packet(kMean, kDp), kinematics_from_beta(0.5)), DomainError);
}

TEST_CASE("transverse width growth") {
    auto v = make_vortex_packet(kMean, kDp, 10);
    const double td = spreading_time(v);
    CHECK(sigma_perp_at(v, 0.0) == v.sigma_perp());
    CHECK(sigma_perp_at(v, td) == doctest::Approx(std::sqrt(2.0) * v.sigma_perp()).epsilon(1e-14));
    CHECK(sigma_perp_at(v, 3 * td) == doctest::Approx(std::sqrt(10.0) * v.sigma_perp()).epsilon(1e-14));
    double prev = sigma_perp_at(v, 0.0);
    for (int i = 1; i <= 200; ++i) {
        const double s = sigma_perp_at(v, 0.05 * i * td);
        CHECK(s > prev);
        prev = s;
    }
    CHECK(sigma_perp_at(v, 1e6 * td) / v.sigma_perp() / 1e6 == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("closed-form moments") {
    auto v = make_vortex_packet(kMean, 1 / 20e-9, 10);
    auto m = packet_moments(v, 0.0);
    CHECK(m.quadrupole[2][2] == doctest::Approx(-4e-16).epsilon(1e-12));
    CHECK(m.quadrupole[0][0] == doctest::Approx(2e-16).epsilon(1e-12));
    CHECK(m.quadrupole[1][1] == doctest::Approx(2e-16).epsilon(1e-12));
    CHECK(m.mu[2] == doctest::Approx(5 * kComptonWavelength).epsilon(1e-14));
    auto minus = packet_moments(make_vortex_packet(kMean, 1 / 20e-9, -10), 0.0);
    CHECK(minus.mu[2] == -m.mu[2]);
    CHECK(minus.quadrupole == m.quadrupole);
    const double td = spreading_time(v);
    auto later = packet_moments(v, td);
    for (int i = 0; i < 3; ++i) {
        CHECK(later.quadrupole[i][i] == doctest::Approx(2 * m.quadrupole[i][i]).epsilon(1e-14));
    }
    for (double t : {0.0, 0.3 * td, td, 17 * td}) {
        auto q = packet_moments(v, t).quadrupole;
        CHECK(q[0][0] + q[1][1] + q[2][2] == 0.0);
        CHECK(q[0][1] == 0.0);
        CHECK(q[0][2] == 0.0);
        CHECK(q[1][2] == 0.0);
    }
}

TEST_CASE("closed-form moments against the quadrature oracle") {
    for (int ell : {2, -5}) {
        auto v = make_vortex_packet(kMean, kDp, ell);
        auto closed = packet_moments(v, 0.0);
        auto q = numerics::oracle_moment_quadrature(v, numerics::MomentKind::quadrupole);
        // Same shape; the oracle's r.m.s. size carries the extra |l| of the ring.
        CHECK(q.tensor[2][2] / q.tensor[0][0] == doctest::Approx(-2.0).epsilon(0.02));
        CHECK(q.tensor[2][2] / closed.quadrupole[2][2] == doctest::Approx(std::abs(ell)).epsilon(0.02));
        auto mu = numerics::oracle_moment_quadrature(v, numerics::MomentKind::magnetic);
        CHECK(mu.vector[2] == doctest::Approx(closed.mu[2]).epsilon(1e-5));
        auto d = numerics::oracle_moment_quadrature(v, numerics::MomentKind::dipole);
        CHECK(norm3(d.vector) < 1e-9 * v.sigma_perp());
    }
}

TEST_CASE("sign symmetry of the packet") {
    auto a = make_vortex_packet(kMean, kDp, 4);
    auto b = make_vortex_packet(kMean, kDp, -4);
    for (const auto& k : kProbeK) CHECK(a.modulus_at(k) == b.modulus_at(k));
}

TEST_CASE("mean dipole and its removal") {
    auto g = make_gaussian_packet(kMean, kDp);
    auto shifted = g.with_phase_offset({-1e-9, 0.0, 0.0});  // phase b p_x with b = 1 nm
    auto d = mean_dipole(shifted);
    CHECK(d[0] == doctest::Approx(-1e-9).epsilon(1e-6));
    CHECK(std::abs(d[1]) < 1e-9 * g.sigma_perp());
    CHECK(std::abs(d[2]) < 1e-9 * g.sigma_perp());

    auto cleaned = remove_mean_dipole(shifted);
    CHECK(norm3(mean_dipole(cleaned)) < 1e-9 * g.sigma_perp());
    auto twice = remove_mean_dipole(cleaned);
    CHECK(norm3(twice.phase_offset()) <= norm3(cleaned.phase_offset()) + 1e-9 * g.sigma_perp());
    CHECK(std::abs(twice.phase_offset()[0] - cleaned.phase_offset()[0]) < 1e-9 * g.sigma_perp());

    auto v = make_vortex_packet(kMean, kDp, 3);
    CHECK(norm3(mean_dipole(v)) < 1e-9 * v.sigma_perp());
    CHECK(norm3(remove_mean_dipole(v).phase_offset()) < 1e-9 * v.sigma_perp());

    auto skew = make_vortex_packet(kMean, kDp, -2).with_phase_offset({3e-8, -2e-8, 5e-8});
    CHECK(norm3(mean_dipole(remove_mean_dipole(skew))) < 1e-9 * v.sigma_perp());
}

TEST_CASE("gaussian wigner function") {
    auto g = make_gaussian_packet(kMean, kDp);
    std::vector<double> ratios;
    for (const auto& k : kProbeK) {
        const Vec3 p = absolute(g, k);
        ratios.push_back(wigner(g, {0, 0, 0}, p, 0.0) / g.density(p));
    }
    for (double r : ratios) CHECK(r == doctest::Approx(ratios[0]).epsilon(1e-5));
    for (const auto& x : kProbeX)
        for (const auto& k : kProbeK) CHECK(wigner(g, x, absolute(g, k), 0.0) >= 0.0);
}

TEST_CASE("vortex wigner function is not proportional to the density") {
    auto v = make_vortex_packet(kMean, kDp, 2);
    double lo = 1e300, hi = -1e300;
    for (const auto& k : kProbeK) {
        const Vec3 p = absolute(v, k);
        if (v.density(p) == 0.0) continue;
        const double r = wigner(v, {0, 0, 0}, p, 0.0) / v.density(p);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK((hi - lo) > 0.1 * std::max(std::abs(hi), std::abs(lo)));
}

TEST_CASE("wigner momentum marginal") {
    auto g = make_gaussian_packet(kMean, kDp);
    auto v = make_vortex_packet(kMean, kDp, 2);
    for (const auto* packet : {&g, &v}) {
        for (std::size_t i = 1; i < kProbeK.size(); ++i) {
            const Vec3 p = absolute(*packet, kProbeK[i]);
            const double exact = packet->density(p);
            CHECK(momentum_marginal(*packet, p, 0.0, 4) == doctest::Approx(exact).epsilon(1e-4));
        }
    }
    // after free propagation the packet has moved but the marginal is unchanged
    for (std::size_t i = 1; i < 3; ++i) {
        const Vec3 p = absolute(g, kProbeK[i]);
        CHECK(momentum_marginal(g, p, 1e-3, 2) == doctest::Approx(g.density(p)).epsilon(1e-4));
    }
}

TEST_CASE("wigner position marginal") {
    auto g = make_gaussian_packet(kMean, kDp);
    auto v = make_vortex_packet(kMean, kDp, 2);
    for (const auto* packet : {&g, &v}) {
        for (std::size_t i = 1; i < kProbeX.size(); ++i) {
            const double exact = position_density(*packet, kProbeX[i]);
            CHECK(position_marginal(*packet, kProbeX[i], 4) == doctest::Approx(exact).epsilon(1e-4));
        }
    }
}

TEST_CASE("curvature matrix") {
    auto g = make_gaussian_packet(kMean, kDp);
    const auto d = curvature_matrix(g, kMean);
    const double expect = -g.density(kMean) / (kDp * kDp);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) {
                CHECK(d[i][i] == doctest::Approx(expect).epsilon(1e-5));
            } else {
                CHECK(std::abs(d[i][j]) < 1e-6 * std::abs(expect));
            }
        }
    auto v = make_vortex_packet(kMean, kDp, 3);
    const auto dv = curvature_matrix(v, absolute(v, {0.5 * kDp, -1.2 * kDp, 0.3 * kDp}));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(std::abs(dv[i][j] - dv[j][i]) <= 1e-10 * std::abs(dv[i][j]));
    CHECK_THROWS_AS(curvature_matrix(v, kMean), DomainError);
    CHECK_THROWS_AS(curvature_matrix(g, absolute(g, {0, 0, 60 * kDp})), DomainError);
}
