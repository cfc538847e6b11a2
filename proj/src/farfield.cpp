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

#include "vsp/farfield.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vsp/errors.hpp"
#include "vsp/numerics/kernels.hpp"

namespace vsp {

namespace {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

void require_far(const DetectorGeometry& det) {
    if (!det.far_field()) throw DomainError("far-field model called with a finite-distance detector");
}

double spectral_weight(double omega, double period, double power) {
    return power == 0.0 ? 1.0 : std::pow(omega * period / kTwoPi, power);
}

} // namespace

void RadiationModel::validate() const {
    if (!std::isfinite(c_mu) || !std::isfinite(c_q1)) throw DomainError("model coefficients must be finite");
    if (!(spectral_power >= 0.0) || !std::isfinite(spectral_power)) {
        throw DomainError("spectral_power must be a finite non-negative number");
    }
    if (lobes < 1) throw DomainError("line window needs at least one lobe");
    quad.validate();
}

double comb_factor(int strips, double delta) {
    if (strips < 1) throw DomainError("comb_factor: need at least one strip");
    const double d = std::remainder(delta, kTwoPi);
    const double n = strips;
    const double s = std::sin(0.5 * d);
    if (std::abs(s) < 1e-6) return n * n * (1.0 - (n * n - 1.0) * d * d / 12.0);
    const double t = std::sin(0.5 * n * d);
    return t * t / (s * s);
}

double envelope(const Grating& grating, const ElectronKinematics& kin, double lambda, double theta, double phi) {
    if (!(lambda > 0.0)) throw DomainError("envelope: wavelength must be positive");
    const double c = azimuthal_cosine(phi);
    const double st = std::sin(theta);
    const double bg = kin.beta_gamma;
    const double root = std::sqrt(1.0 + bg * bg * c * c * st * st);
    return std::exp(-(2.0 * kTwoPi * grating.impact / (bg * lambda)) * root);
}

double charge_intensity_spectral(const Grating& grating, const ElectronKinematics& kin, double omega,
                                 const DetectorGeometry& det, const RadiationModel& model) {
    require_far(det);
    if (!(omega > 0.0)) throw DomainError("charge_intensity_spectral: omega must be positive");
    const double a = 1.0 / kin.beta - std::cos(det.theta);
    const double psi = omega * grating.period * a;
    return spectral_weight(omega, grating.period, model.spectral_power) *
           envelope(grating, kin, kTwoPi / omega, det.theta, det.phi) * comb_factor(grating.strips, psi);
}

double charge_intensity_line(const Grating& grating, const ElectronKinematics& kin, const DetectorGeometry& det,
                             int order, const RadiationModel& model) {
    require_far(det);
    if (order < 1) throw DomainError("diffraction order must be >= 1");
    model.validate();
    const double a = 1.0 / kin.beta - std::cos(det.theta);
    const double scale = 1.0 / (grating.period * a);  // d omega / d delta
    const double lobe = kTwoPi / grating.strips;
    const double half = std::min(model.lobes * lobe, kPi);

    // Breaks at the comb zeros keep every piece on a single lobe.
    std::vector<double> breaks{-half};
    for (int k = -model.lobes; k <= model.lobes; ++k) {
        const double z = k * lobe;
        if (k != 0 && z > -half && z < half) breaks.push_back(z);
    }
    breaks.push_back(half);
    std::sort(breaks.begin(), breaks.end());

    auto f = [&](double delta) {
        const double omega = (kTwoPi * order + delta) * scale;
        return scale * spectral_weight(omega, grating.period, model.spectral_power) *
               envelope(grating, kin, kTwoPi / omega, det.theta, det.phi) * comb_factor(grating.strips, delta);
    };
    return numerics::integrate_pieces(f, breaks, model.quad).value;
}

double magnetic_ratio_for_wavelength(int ell, double phi, double lambda, double c_mu) {
    if (!(lambda > 0.0)) throw DomainError("magnetic ratio: wavelength must be positive");
    return c_mu * ell * azimuthal_cosine(phi) * kComptonWavelength / lambda;
}

double magnetic_ratio(const ElectronKinematics& kin, int ell, const DetectorGeometry& det, int order,
                      const Grating& grating, const RadiationModel& model) {
    return magnetic_ratio_for_wavelength(ell, det.phi, sp_wavelength(grating, kin, det.theta, order), model.c_mu);
}

double quadrupole_static_ratio(const PacketModel& packet, const RadiationModel& model) {
    const double r = packet.oam() * kComptonWavelength / packet.sigma_perp();
    return model.c_q1 * r * r;
}

namespace {

double spreading_prefactor(const PacketModel& packet, const ElectronKinematics& kin, double lambda) {
    const double r = packet.oam() * kComptonWavelength / packet.sigma_perp();
    const double bg2 = kin.beta_gamma * kin.beta_gamma;
    return 2.0 * kPi * kPi / (bg2 * bg2) * r * r / (lambda * lambda);
}

} // namespace

double quadrupole_spreading_ratio(const Grating& grating, const PacketModel& packet,
                                  const ElectronKinematics& kin, double theta) {
    const double lambda = sp_wavelength(grating, kin, theta, 1);
    const double length = grating.length();
    return spreading_prefactor(packet, kin, lambda) * length * length / 3.0;
}

double quadrupole_spreading_ratio_discrete(const Grating& grating, const PacketModel& packet,
                                           const ElectronKinematics& kin, double theta, double waist_z0) {
    const double lambda = sp_wavelength(grating, kin, theta, 1);
    double sum = 0.0;
    for (int m = 0; m < grating.strips; ++m) {
        const double z = m * grating.period - waist_z0;
        sum += z * z;
    }
    return spreading_prefactor(packet, kin, lambda) * sum / grating.strips;
}

LineIntensity total_line_intensity(const Grating& grating, const PacketModel& packet, const ElectronKinematics& kin,
                                   const DetectorGeometry& det, int order, const RadiationModel& model,
                                   double waist_z0) {
    LineIntensity out;
    out.order = order;
    out.lambda_line = sp_wavelength(grating, kin, det.theta, order);
    out.W_e = charge_intensity_line(grating, kin, det, order, model);
    out.W_emu = magnetic_ratio(kin, packet.oam(), det, order, grating, model) * out.W_e;
    out.W_eQ1 = quadrupole_static_ratio(packet, model) * out.W_e;
    if (order == 1) {
        out.W_eQ2 = quadrupole_spreading_ratio_discrete(grating, packet, kin, det.theta, waist_z0) * out.W_e;
    } else {
        out.spreading_undefined = true;
    }
    out.total = out.W_e + out.W_emu + out.W_eQ1 + out.W_eQ2;
    return out;
}

double oam_asymmetry(const Grating& grating, const PacketModel& packet, const ElectronKinematics& kin,
                     const DetectorGeometry& det, int order, const RadiationModel& model) {
    if (packet.oam() == 0) return 0.0;
    const auto mirror = PacketModel::vortex(packet.mean_momentum(), packet.delta_p(), -packet.oam())
                            .with_phase_offset(packet.phase_offset());
    const double plus = total_line_intensity(grating, packet, kin, det, order, model).total;
    const double minus = total_line_intensity(grating, mirror, kin, det, order, model).total;
    return (plus - minus) / (plus + minus);
}

std::vector<MomentumSample> momentum_samples(const PacketModel& packet, int nodes_per_axis) {
    const auto gh = numerics::gauss_hermite(nodes_per_axis);
    const double l = std::abs(packet.oam());
    const Vec3& mean = packet.mean_momentum();
    const double dp = packet.delta_p();
    std::vector<MomentumSample> all;
    all.reserve(gh.nodes.size() * gh.nodes.size() * gh.nodes.size());
    double total = 0.0;
    double largest = 0.0;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
        for (std::size_t j = 0; j < gh.nodes.size(); ++j) {
            const double ux = gh.nodes[i];
            const double uy = gh.nodes[j];
            // |psi|^2 / exp(-u^2) = (u_perp^2)^|l| up to a constant
            const double radial = l == 0.0 ? 1.0 : std::pow(ux * ux + uy * uy, l);
            for (std::size_t k = 0; k < gh.nodes.size(); ++k) {
                const double w = gh.weights[i] * gh.weights[j] * gh.weights[k] * radial;
                all.push_back({{mean[0] + dp * ux, mean[1] + dp * uy, mean[2] + dp * gh.nodes[k]}, w});
                total += w;
                largest = std::max(largest, w);
            }
        }
    }
    std::vector<MomentumSample> kept;
    double kept_total = 0.0;
    for (const auto& s : all) {
        if (s.weight >= 1e-15 * largest) {
            kept.push_back(s);
            kept_total += s.weight;
        }
    }
    for (auto& s : kept) s.weight /= kept_total;
    return kept;
}

TiltedAngles tilted_angles(const Vec3& p, double theta, double phi) {
    const double len = norm(p);
    if (!(len > 0.0)) throw DomainError("tilted_angles: zero momentum");
    const Vec3 e3{p[0] / len, p[1] / len, p[2] / len};
    Vec3 e1{1.0 - e3[0] * e3[0], -e3[0] * e3[1], -e3[0] * e3[2]};
    const double n1 = norm(e1);
    e1 = {e1[0] / n1, e1[1] / n1, e1[2] / n1};
    const Vec3 e2 = cross(e3, e1);
    const Vec3 n{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
    const double along = dot(n, e3);
    return {std::atan2(norm(cross(n, e3)), along), std::atan2(dot(n, e2), dot(n, e1))};
}

double wigner_averaged_line(const PacketModel& packet, const Grating& grating, const DetectorGeometry& det,
                            int order, const RadiationModel& model, int nodes_per_axis) {
    require_far(det);
    double sum = 0.0;
    for (const auto& s : momentum_samples(packet, nodes_per_axis)) {
        const auto kin = kinematics_from_momentum(norm(s.momentum));
        const auto a = tilted_angles(s.momentum, det.theta, det.phi);
        sum += s.weight * charge_intensity_line(grating, kin, far_detector(a.theta, a.phi), order, model);
    }
    return sum;
}

double wigner_averaged_spectral(const PacketModel& packet, const Grating& grating, const DetectorGeometry& det,
                                double omega, const RadiationModel& model, int nodes_per_axis) {
    require_far(det);
    double sum = 0.0;
    for (const auto& s : momentum_samples(packet, nodes_per_axis)) {
        const auto kin = kinematics_from_momentum(norm(s.momentum));
        const auto a = tilted_angles(s.momentum, det.theta, det.phi);
        sum += s.weight * charge_intensity_spectral(grating, kin, omega, far_detector(a.theta, a.phi), model);
    }
    return sum;
}

FeasibilityWindow feasibility_window(const PacketModel& packet, double lambda, double margin) {
    if (packet.oam() == 0) throw DomainError("feasibility_window: needs a vortex packet");
    if (!(lambda > 0.0)) throw DomainError("feasibility_window: wavelength must be positive");
    if (!(margin >= 0.1 && margin <= 0.2)) throw DomainError("feasibility_window: margin must lie in [0.1, 0.2]");
    const double scale = packet.sigma_perp() / (kComptonWavelength * std::abs(packet.oam()));
    FeasibilityWindow w;
    w.margin = margin;
    w.n_max = margin * scale;
    w.n_min = std::sqrt(kComptonWavelength / lambda) * scale;
    w.empty = !(w.n_min < w.n_max);
    return w;
}

PeakShift polar_peak_shift(const Grating& grating, const PacketModel& packet, const ElectronKinematics& kin,
                           double phi, int order, const RadiationModel& model, bool include_quadrupole,
                           double waist_z0) {
    auto charge = [&](double theta) {
        return charge_intensity_line(grating, kin, far_detector(theta, phi), order, model);
    };
    auto total = [&](double theta) {
        const auto li = total_line_intensity(grating, packet, kin, far_detector(theta, phi), order, model, waist_z0);
        return include_quadrupole ? li.total : li.W_e + li.W_emu;
    };
    PeakShift out;
    out.theta_charge = numerics::find_peak(charge, 0.0, kPi).argmax;
    out.theta_total = numerics::find_peak(total, 0.0, kPi).argmax;
    out.shift = out.theta_total - out.theta_charge;
    return out;
}

} // namespace vsp
