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

#pragma once

#include <complex>
#include <functional>

#include "vsp/constants.hpp"
#include "vsp/kinematics.hpp"
#include "vsp/numerics/quadrature.hpp"

namespace vsp {

enum class PacketKind { gaussian, vortex };

/// Momentum-space electron packet
///
///   psi(p) = A (p_perp / dp)^|l| exp(-(p - <p>)^2 / 2 dp^2) exp(i l atan2(p_y, p_x) - i x0.(p - <p>))
///
/// normalised to  int d^3p/(2 pi)^3 |psi|^2 = 1. The Gaussian packet is the
/// l = 0 member. The vortex axis is z and a vortex packet's mean momentum
/// must lie on it. Evaluations take the offset k = p - <p> so that the
/// envelope keeps full precision even though |<p>| >> dp.
class PacketModel {
public:
    static PacketModel gaussian(const Vec3& mean_momentum, double delta_p);
    static PacketModel vortex(const Vec3& mean_momentum, double delta_p, int ell);

    PacketKind kind() const { return kind_; }
    const Vec3& mean_momentum() const { return mean_; }
    double delta_p() const { return delta_p_; }
    int oam() const { return ell_; }
    const Vec3& phase_offset() const { return x0_; }

    /// sigma_perp = 1 / dp for every kind.
    double sigma_perp() const { return 1.0 / delta_p_; }

    /// Copy with x0 replaced.
    PacketModel with_phase_offset(const Vec3& x0) const;

    /// psi(p) -> psi(p) exp(-i p.shift): a rigid translation by `shift`.
    PacketModel translated(const Vec3& shift) const;

    Vec3 offset_of(const Vec3& p) const;

    double log_modulus_at(const Vec3& k) const;
    double modulus_at(const Vec3& k) const;
    double phase_at(const Vec3& k) const;
    std::complex<double> amplitude_at(const Vec3& k) const;

    /// phi(k1) - phi(k2) wrapped into (-pi, pi]. The linear part is differenced
    /// before it is added so that a tiny x0 does not drown in rounding.
    double phase_difference(const Vec3& k1, const Vec3& k2) const;

    /// |psi|^2 at absolute momentum p.
    double density(const Vec3& p) const;

    /// Relativistic energy sqrt(p^2 + m^2) at offset k.
    double energy_at(const Vec3& k) const;

    /// Factors of psi = psi_perp(k_x, k_y) psi_z(k_z), each normalised with
    /// its own (2 pi)^-dim measure.
    std::complex<double> transverse_amplitude(double kx, double ky) const;
    std::complex<double> longitudinal_amplitude(double kz) const;

private:
    PacketModel(PacketKind kind, const Vec3& mean, double delta_p, int ell);

    PacketKind kind_;
    Vec3 mean_;
    double delta_p_;
    int ell_;
    Vec3 x0_{0.0, 0.0, 0.0};
    double log_norm_transverse_;
    double log_norm_longitudinal_;
};

PacketModel make_gaussian_packet(const Vec3& mean_momentum, double delta_p);
PacketModel make_vortex_packet(const Vec3& mean_momentum, double delta_p, int ell);

/// Mean momentum (0, 0, beta*gamma*m) for the given kinematics.
Vec3 axial_momentum(const ElectronKinematics& kin);

/// t_d = sigma_perp^2 / (|l| lambda_c), expressed as a length.
double spreading_time(const PacketModel& packet);

/// z_R = beta * t_d.
double rayleigh_length(const PacketModel& packet, const ElectronKinematics& kin);

/// sigma_perp(t) = sigma_perp sqrt(1 + t^2/t_d^2).
double sigma_perp_at(const PacketModel& packet, double t);

struct PacketMoments {
    Vec3 mu{};          // magnetic moment l/(2m) z, as a length l*lambda_c/2 [m]
    Mat3 quadrupole{};  // sigma_perp(t)^2 diag(1/2, 1/2, -1) [m^2]
    Vec3 dipole{};      // mean electric dipole, x0 for these phase laws [m]
};

/// Closed-form moments of a vortex packet at time t.
PacketMoments packet_moments(const PacketModel& packet, double t);

/// Integration box in u = k / dp that holds the packet to ~1e-20.
numerics::Box packet_support_box(const PacketModel& packet);

/// d = -<d phi / d p>, by quadrature with central differences of the phase.
Vec3 mean_dipole(const PacketModel& packet, const numerics::QuadratureSpec& spec = {});

/// Applies psi -> psi exp(-i x0.p) with x0 = <d phi / d p>.
PacketModel remove_mean_dipole(const PacketModel& packet, const numerics::QuadratureSpec& spec = {});

struct WignerOptions {
    numerics::QuadratureSpec quad{1e-6, 1e-14, 2000};
    double imaginary_tolerance = 1e-8;
};

/// Wave-vector cutoff for the Wigner transform: 8 dp, widened by 4 sqrt(|l|) dp
/// so that the ring of a vortex packet fits inside.
double wigner_cutoff(const PacketModel& packet);

/// n(x, p, t) = int d^3q/(2 pi)^3 psi*(p - q/2, t) psi(p + q/2, t) exp(i q.x)
/// with psi(p, t) = psi(p) exp(-i t eps(p)), integrated over |q_i| <= cutoff.
/// At t = 0 the transverse and longitudinal factors are transformed separately.
double wigner(const PacketModel& packet, const Vec3& x, const Vec3& p, double t,
              const WignerOptions& options = {});

/// Energy law eps(p) used by curvature_matrix.
using EnergyLaw = std::function<double(const Vec3& p)>;

/// sqrt(p^2 + m^2).
double relativistic_energy(const Vec3& p);

/// D_ij = 2 eps (|Psi| d_i d_j |Psi| - d_i |Psi| d_j |Psi|) with Psi = psi / sqrt(2 eps),
/// by central differences with step 1e-4 dp. Throws DomainError where |psi| < 1e-300.
Mat3 curvature_matrix(const PacketModel& packet, const Vec3& p,
                      const EnergyLaw& energy = relativistic_energy);

} // namespace vsp
