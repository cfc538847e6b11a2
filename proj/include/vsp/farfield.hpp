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

#include "vsp/kinematics.hpp"
#include "vsp/numerics/quadrature.hpp"
#include "vsp/wavepacket.hpp"

namespace vsp {

/// Knobs of the point-charge radiation model.
struct RadiationModel {
    double c_mu = 1.0;           // coefficient of the magnetic-moment ratio
    double c_q1 = 1.0;           // coefficient of the static quadrupole ratio
    double spectral_power = 4.0; // p in the (omega d / 2 pi)^p spectral weight
    int lobes = 3;               // comb lobes on each side of a line
    numerics::QuadratureSpec quad{1e-6, 1e-300, 2000};

    void validate() const;
};

/// sin^2(N delta/2) / sin^2(delta/2), with the removable singularity at
/// delta = 0 mod 2 pi taken from its series.
double comb_factor(int strips, double delta);

/// exp{-(4 pi h / (beta gamma lambda)) sqrt(1 + beta^2 gamma^2 cos^2 phi sin^2 theta)}.
double envelope(const Grating& grating, const ElectronKinematics& kin, double lambda, double theta, double phi);

/// Spectral-angular density of a point charge in the far field [arb. units]:
///   (omega d / 2 pi)^p * envelope * F_N(omega d (1/beta - cos theta)).
double charge_intensity_spectral(const Grating& grating, const ElectronKinematics& kin, double omega,
                                 const DetectorGeometry& det, const RadiationModel& model = {});

/// charge_intensity_spectral integrated over the n-th line, within
/// model.lobes comb lobes on each side of the resonance (the whole period
/// when that is narrower than the lobes).
double charge_intensity_line(const Grating& grating, const ElectronKinematics& kin, const DetectorGeometry& det,
                             int order, const RadiationModel& model = {});

/// c_mu l cos(phi) lambda_c / lambda.
double magnetic_ratio_for_wavelength(int ell, double phi, double lambda, double c_mu = 1.0);

/// Magnetic-moment ratio W_emu / W_e on the n-th line seen by `det`.
double magnetic_ratio(const ElectronKinematics& kin, int ell, const DetectorGeometry& det, int order,
                      const Grating& grating, const RadiationModel& model = {});

/// c_Q1 l^2 lambda_c^2 / sigma_perp^2 (0 for a Gaussian packet).
double quadrupole_static_ratio(const PacketModel& packet, const RadiationModel& model = {});

/// N^2 l^2 (lambda_c / sigma_perp)^2 (2 pi^2 / (3 beta^4 gamma^4)) d^2 / lambda(theta)^2, first order.
double quadrupole_spreading_ratio(const Grating& grating, const PacketModel& packet,
                                  const ElectronKinematics& kin, double theta);

/// (2 pi^2 / (beta^4 gamma^4)) (l lambda_c / sigma_perp)^2 <z^2> / lambda(theta)^2 with
/// <z^2> = (1/N) sum_{m<N} (m d - z0)^2, z0 the waist position along the grating.
double quadrupole_spreading_ratio_discrete(const Grating& grating, const PacketModel& packet,
                                           const ElectronKinematics& kin, double theta, double waist_z0 = 0.0);

struct LineIntensity {
    double W_e = 0.0;
    double W_emu = 0.0;
    double W_eQ1 = 0.0;
    double W_eQ2 = 0.0;
    double total = 0.0;
    int order = 1;
    double lambda_line = 0.0;
    bool spreading_undefined = false;  // order != 1: W_eQ2 is set to zero
};

/// All terms of the line intensity of a packet; W_eQ2 uses the discrete sum.
LineIntensity total_line_intensity(const Grating& grating, const PacketModel& packet, const ElectronKinematics& kin,
                                   const DetectorGeometry& det, int order, const RadiationModel& model = {},
                                   double waist_z0 = 0.0);

/// (W(l) - W(-l)) / (W(l) + W(-l)).
double oam_asymmetry(const Grating& grating, const PacketModel& packet, const ElectronKinematics& kin,
                     const DetectorGeometry& det, int order, const RadiationModel& model = {});

/// Gauss-Hermite product grid over |psi(p)|^2 used to average plane-wave
/// emission over the packet's momentum spread.
struct MomentumSample {
    Vec3 momentum;
    double weight;
};
std::vector<MomentumSample> momentum_samples(const PacketModel& packet, int nodes_per_axis = 24);

/// Detector angles seen from a frame whose z axis is along p.
struct TiltedAngles {
    double theta;
    double phi;
};
TiltedAngles tilted_angles(const Vec3& p, double theta, double phi);

/// Line intensity averaged over the packet's momentum distribution; each
/// component radiates with its own beta(p) and with the detector angles
/// measured from its own direction. Kinematics come from the packet.
double wigner_averaged_line(const PacketModel& packet, const Grating& grating, const DetectorGeometry& det,
                            int order, const RadiationModel& model = {}, int nodes_per_axis = 24);

/// Spectral density averaged the same way, at angular frequency omega.
double wigner_averaged_spectral(const PacketModel& packet, const Grating& grating, const DetectorGeometry& det,
                                double omega, const RadiationModel& model = {}, int nodes_per_axis = 24);

struct FeasibilityWindow {
    double n_min = 0.0;
    double n_max = 0.0;
    double margin = 0.15;
    bool empty = false;
};

/// sqrt(lambda_c / lambda) sigma/(lambda_c |l|) << N << margin sigma/(lambda_c |l|).
FeasibilityWindow feasibility_window(const PacketModel& packet, double lambda, double margin = 0.15);

struct PeakShift {
    double theta_charge;  // argmax of W_e
    double theta_total;   // argmax of the total
    double shift;         // theta_total - theta_charge [rad]
};

/// Shift of the polar maximum caused by the quadrupole terms at fixed phi.
PeakShift polar_peak_shift(const Grating& grating, const PacketModel& packet, const ElectronKinematics& kin,
                           double phi, int order, const RadiationModel& model = {}, bool include_quadrupole = true,
                           double waist_z0 = 0.0);

} // namespace vsp
