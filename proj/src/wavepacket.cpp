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

#include "vsp/wavepacket.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "vsp/errors.hpp"

namespace vsp {

namespace {

double wrapped(double a) { return std::remainder(a, kTwoPi); }

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

} // namespace

PacketModel::PacketModel(PacketKind kind, const Vec3& mean, double delta_p, int ell)
    : kind_(kind), mean_(mean), delta_p_(delta_p), ell_(ell) {
    const double l = std::abs(static_cast<double>(ell));
    // (2 pi)^2 / (pi dp^2 l!) and 2 pi / (sqrt(pi) dp) for |psi_perp|^2 and |psi_z|^2.
    log_norm_transverse_ =
        0.5 * (2.0 * std::log(kTwoPi) - std::log(kPi) - 2.0 * std::log(delta_p) - std::lgamma(l + 1.0));
    log_norm_longitudinal_ = 0.5 * (std::log(kTwoPi) - 0.5 * std::log(kPi) - std::log(delta_p));
}

PacketModel PacketModel::gaussian(const Vec3& mean_momentum, double delta_p) {
    if (!(delta_p > 0.0) || !std::isfinite(delta_p)) {
        throw DomainError("momentum width must be positive");
    }
    return PacketModel(PacketKind::gaussian, mean_momentum, delta_p, 0);
}

PacketModel PacketModel::vortex(const Vec3& mean_momentum, double delta_p, int ell) {
    if (!(delta_p > 0.0) || !std::isfinite(delta_p)) {
        throw DomainError("momentum width must be positive");
    }
    if (ell == 0) {
        throw DomainError("a vortex packet needs l != 0; use the Gaussian packet for l = 0");
    }
    if (mean_momentum[0] != 0.0 || mean_momentum[1] != 0.0) {
        throw DomainError("vortex packets must have their mean momentum on the z axis");
    }
    return PacketModel(PacketKind::vortex, mean_momentum, delta_p, ell);
}

PacketModel PacketModel::with_phase_offset(const Vec3& x0) const {
    PacketModel copy = *this;
    copy.x0_ = x0;
    return copy;
}

PacketModel PacketModel::translated(const Vec3& shift) const {
    return with_phase_offset(add(x0_, shift));
}

Vec3 PacketModel::offset_of(const Vec3& p) const {
    return {p[0] - mean_[0], p[1] - mean_[1], p[2] - mean_[2]};
}

double PacketModel::log_modulus_at(const Vec3& k) const {
    double value = log_norm_transverse_ + log_norm_longitudinal_ - 0.5 * dot(k, k) / (delta_p_ * delta_p_);
    if (ell_ != 0) {
        const double p_perp = std::hypot(mean_[0] + k[0], mean_[1] + k[1]);
        value += std::abs(ell_) * std::log(p_perp / delta_p_);
    }
    return value;
}

double PacketModel::modulus_at(const Vec3& k) const { return std::exp(log_modulus_at(k)); }

double PacketModel::phase_at(const Vec3& k) const {
    double phase = -dot(x0_, k);
    if (ell_ != 0) phase += ell_ * std::atan2(mean_[1] + k[1], mean_[0] + k[0]);
    return phase;
}

double PacketModel::phase_difference(const Vec3& k1, const Vec3& k2) const {
    double winding = 0.0;
    if (ell_ != 0) {
        winding = ell_ * (std::atan2(mean_[1] + k1[1], mean_[0] + k1[0]) -
                          std::atan2(mean_[1] + k2[1], mean_[0] + k2[0]));
    }
    const Vec3 dk{k1[0] - k2[0], k1[1] - k2[1], k1[2] - k2[2]};
    return wrapped(wrapped(winding) - dot(x0_, dk));
}

std::complex<double> PacketModel::amplitude_at(const Vec3& k) const {
    return std::polar(modulus_at(k), phase_at(k));
}

double PacketModel::density(const Vec3& p) const {
    return std::exp(2.0 * log_modulus_at(offset_of(p)));
}

double PacketModel::energy_at(const Vec3& k) const {
    const Vec3 p = add(mean_, k);
    return std::sqrt(dot(p, p) + kElectronMass * kElectronMass);
}

std::complex<double> PacketModel::transverse_amplitude(double kx, double ky) const {
    double log_mod = log_norm_transverse_ - 0.5 * (kx * kx + ky * ky) / (delta_p_ * delta_p_);
    double phase = -(x0_[0] * kx + x0_[1] * ky);
    if (ell_ != 0) {
        const double px = mean_[0] + kx;
        const double py = mean_[1] + ky;
        log_mod += std::abs(ell_) * std::log(std::hypot(px, py) / delta_p_);
        phase += ell_ * std::atan2(py, px);
    }
    return std::polar(std::exp(log_mod), phase);
}

std::complex<double> PacketModel::longitudinal_amplitude(double kz) const {
    const double log_mod = log_norm_longitudinal_ - 0.5 * kz * kz / (delta_p_ * delta_p_);
    return std::polar(std::exp(log_mod), -x0_[2] * kz);
}

PacketModel make_gaussian_packet(const Vec3& mean_momentum, double delta_p) {
    return PacketModel::gaussian(mean_momentum, delta_p);
}

PacketModel make_vortex_packet(const Vec3& mean_momentum, double delta_p, int ell) {
    return PacketModel::vortex(mean_momentum, delta_p, ell);
}

Vec3 axial_momentum(const ElectronKinematics& kin) { return {0.0, 0.0, momentum_of(kin)}; }

double spreading_time(const PacketModel& packet) {
    if (packet.oam() == 0) {
        throw DomainError("spreading is modelled for vortex packets (l != 0) only");
    }
    const double sigma = packet.sigma_perp();
    return sigma * sigma / (std::abs(packet.oam()) * kComptonWavelength);
}

double rayleigh_length(const PacketModel& packet, const ElectronKinematics& kin) {
    return kin.beta * spreading_time(packet);
}

double sigma_perp_at(const PacketModel& packet, double t) {
    const double td = spreading_time(packet);
    return packet.sigma_perp() * std::sqrt(1.0 + (t / td) * (t / td));
}

PacketMoments packet_moments(const PacketModel& packet, double t) {
    const double s = sigma_perp_at(packet, t);
    PacketMoments m;
    m.mu = {0.0, 0.0, 0.5 * packet.oam() * kComptonWavelength};
    m.quadrupole[0][0] = 0.5 * s * s;
    m.quadrupole[1][1] = 0.5 * s * s;
    m.quadrupole[2][2] = -s * s;
    // The vortex winding contributes nothing to <d phi/dp>; the linear phase
    // -x0.k contributes -x0, so d = x0.
    m.dipole = packet.phase_offset();
    return m;
}

numerics::Box packet_support_box(const PacketModel& packet) {
    const double transverse = 7.0 + std::sqrt(std::abs(static_cast<double>(packet.oam())));
    return {{-transverse, -transverse, -7.0}, {transverse, transverse, 7.0}};
}

Vec3 mean_dipole(const PacketModel& packet, const numerics::QuadratureSpec& spec) {
    spec.validate();
    const double dp = packet.delta_p();
    const double h = 1e-4;  // in units of dp
    const double log_measure = 3.0 * std::log(dp) - 3.0 * std::log(kTwoPi);

    auto integrand = [&](std::span<const double> u) {
        const Vec3 k{u[0] * dp, u[1] * dp, u[2] * dp};
        const double weight = std::exp(2.0 * packet.log_modulus_at(k) + log_measure);
        std::array<double, 3> grad{};
        if (weight == 0.0) return grad;
        for (int i = 0; i < 3; ++i) {
            Vec3 kp = k;
            Vec3 km = k;
            kp[static_cast<std::size_t>(i)] += h * dp;
            km[static_cast<std::size_t>(i)] -= h * dp;
            grad[static_cast<std::size_t>(i)] =
                weight * packet.phase_difference(kp, km) / (2.0 * h);
        }
        return grad;
    };
    // <d phi/du> vanishes for centred packets, so the absolute tolerance is
    // what terminates the refinement; 1e-11 in u keeps d well under 1e-9 sigma_perp
    // while staying above the rounding noise of the nested rules.
    numerics::QuadratureSpec local = spec;
    local.abs_tol = std::max(spec.abs_tol, 1e-11);
    const auto r = numerics::integrate_box(integrand, packet_support_box(packet), local);
    // The integrand is d phi/du = dp * d phi/dp, hence the factor sigma_perp.
    const double sigma = packet.sigma_perp();
    return {-sigma * r.value[0], -sigma * r.value[1], -sigma * r.value[2]};
}

PacketModel remove_mean_dipole(const PacketModel& packet, const numerics::QuadratureSpec& spec) {
    const Vec3 d = mean_dipole(packet, spec);
    // <d phi/dp> = -d; shifting x0 by it cancels the mean gradient.
    return packet.translated({-d[0], -d[1], -d[2]});
}

double wigner_cutoff(const PacketModel& packet) {
    return (8.0 + 4.0 * std::sqrt(std::abs(static_cast<double>(packet.oam())))) * packet.delta_p();
}

namespace {

double checked_real(const numerics::Estimate<std::array<double, 2>>& r, double tolerance,
                    const char* what) {
    const double re = r.value[0];
    const double im = r.value[1];
    if (std::abs(im) > tolerance * std::abs(re) + 10.0 * r.error) {
        throw NumericalError(std::string("wigner: imaginary residue too large in ") + what, re,
                             std::abs(im));
    }
    return re;
}

} // namespace

double wigner(const PacketModel& packet, const Vec3& x, const Vec3& p, double t,
              const WignerOptions& options) {
    options.quad.validate();
    const double dp = packet.delta_p();
    const double cut = wigner_cutoff(packet) / dp;  // in units of dp
    const Vec3 k = packet.offset_of(p);

    if (t == 0.0) {
        const double measure2 = dp * dp / (kTwoPi * kTwoPi);
        auto transverse = [&](std::span<const double> v) {
            const double qx = v[0] * dp;
            const double qy = v[1] * dp;
            const auto product = std::conj(packet.transverse_amplitude(k[0] - 0.5 * qx, k[1] - 0.5 * qy)) *
                                 packet.transverse_amplitude(k[0] + 0.5 * qx, k[1] + 0.5 * qy) *
                                 std::polar(measure2, qx * x[0] + qy * x[1]);
            return std::array<double, 2>{product.real(), product.imag()};
        };
        const double measure1 = dp / kTwoPi;
        auto longitudinal = [&](double v) {
            const double qz = v * dp;
            const auto product = std::conj(packet.longitudinal_amplitude(k[2] - 0.5 * qz)) *
                                 packet.longitudinal_amplitude(k[2] + 0.5 * qz) *
                                 std::polar(measure1, qz * x[2]);
            return std::array<double, 2>{product.real(), product.imag()};
        };
        const auto rt = numerics::integrate_box(transverse, {{-cut, -cut}, {cut, cut}}, options.quad);
        const auto rz = numerics::integrate(longitudinal, -8.0, 8.0, options.quad);
        return checked_real(rt, options.imaginary_tolerance, "transverse factor") *
               checked_real(rz, options.imaginary_tolerance, "longitudinal factor");
    }

    const double measure3 = dp * dp * dp / (kTwoPi * kTwoPi * kTwoPi);
    const Vec3 centre = {packet.mean_momentum()[0] + k[0], packet.mean_momentum()[1] + k[1],
                         packet.mean_momentum()[2] + k[2]};
    auto full = [&](std::span<const double> v) {
        const Vec3 q{v[0] * dp, v[1] * dp, v[2] * dp};
        const Vec3 plus{k[0] + 0.5 * q[0], k[1] + 0.5 * q[1], k[2] + 0.5 * q[2]};
        const Vec3 minus{k[0] - 0.5 * q[0], k[1] - 0.5 * q[1], k[2] - 0.5 * q[2]};
        // eps(P + q/2) - eps(P - q/2) = 2 P.q / (eps+ + eps-), free of cancellation.
        const double de = 2.0 * dot(centre, q) / (packet.energy_at(plus) + packet.energy_at(minus));
        const auto product = std::conj(packet.amplitude_at(minus)) * packet.amplitude_at(plus) *
                             std::polar(measure3, dot(q, x) - t * de);
        return std::array<double, 2>{product.real(), product.imag()};
    };
    const auto r = numerics::integrate_box(full, {{-cut, -cut, -8.0}, {cut, cut, 8.0}}, options.quad);
    return checked_real(r, options.imaginary_tolerance, "full transform");
}

double relativistic_energy(const Vec3& p) {
    return std::sqrt(dot(p, p) + kElectronMass * kElectronMass);
}

Mat3 curvature_matrix(const PacketModel& packet, const Vec3& p, const EnergyLaw& energy) {
    const Vec3 k0 = packet.offset_of(p);
    if (packet.modulus_at(k0) < 1e-300) {
        throw DomainError("curvature_matrix: |psi| vanishes at the requested momentum");
    }
    const double h = 1e-4 * packet.delta_p();
    const Vec3& mean = packet.mean_momentum();
    auto big_psi = [&](const Vec3& k) {
        return packet.modulus_at(k) / std::sqrt(2.0 * energy(add(mean, k)));
    };
    auto shifted = [&](int i, double si, int j, double sj) {
        Vec3 k = k0;
        k[static_cast<std::size_t>(i)] += si * h;
        k[static_cast<std::size_t>(j)] += sj * h;
        return big_psi(k);
    };

    const double f0 = big_psi(k0);
    const double eps = energy(p);
    std::array<double, 3> grad{};
    for (int i = 0; i < 3; ++i) {
        grad[static_cast<std::size_t>(i)] = (shifted(i, 1, i, 0) - shifted(i, -1, i, 0)) / (2.0 * h);
    }
    Mat3 d{};
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            double second;
            if (i == j) {
                second = (shifted(i, 1, i, 0) - 2.0 * f0 + shifted(i, -1, i, 0)) / (h * h);
            } else {
                second = (shifted(i, 1, j, 1) - shifted(i, 1, j, -1) - shifted(i, -1, j, 1) +
                          shifted(i, -1, j, -1)) /
                         (4.0 * h * h);
            }
            const auto ui = static_cast<std::size_t>(i);
            const auto uj = static_cast<std::size_t>(j);
            d[ui][uj] = 2.0 * eps * (f0 * second - grad[ui] * grad[uj]);
            d[uj][ui] = d[ui][uj];
        }
    }
    return d;
}

} // namespace vsp
