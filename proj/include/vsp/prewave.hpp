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

#include <array>
#include <variant>
#include <vector>

#include "vsp/farfield.hpp"
#include "vsp/kinematics.hpp"

namespace vsp {

/// Gaussian transverse beam density N_b/(2 pi sigma_b^2) exp(-r_T^2 / 2 sigma_b^2).
struct BeamProfile {
    double sigma_b = 0.0;  // [m]
    double count = 1.0;    // N_b

    void validate() const;
};

/// Transverse source displacement (x, y) of the electron trajectory [m].
using Offset = std::array<double, 2>;

/// Single-electron spectral intensity with the strip sources summed
/// coherently. Strip m sits at (x, y, m d); the detector is at distance r
/// along k(theta, phi) from the centre of the undisplaced grating.
///   |sum_m exp{i omega (z_m / beta + R_m - r)} r / R_m|^2 * envelope * (omega d / 2 pi)^p
/// with the envelope taken at the angles from the displaced grating centre
/// to the detector. A far-field detector uses the linearised phases
/// -k.s_m instead, which reproduces charge_intensity_spectral.
double prewave_intensity(const Grating& grating, const ElectronKinematics& kin, const DetectorGeometry& det,
                         double omega, const Offset& source_offset = {0.0, 0.0}, const RadiationModel& model = {});

/// prewave_intensity averaged over the beam density with a nodes x nodes
/// Gauss-Hermite product rule; scales linearly in N_b.
double beam_averaged_intensity(const BeamProfile& beam, const Grating& grating, const ElectronKinematics& kin,
                               const DetectorGeometry& det, double omega, const RadiationModel& model = {},
                               int nodes = 32);

/// Detector distance of an azimuthal scan: a multiple of the pre-wave radius
/// sigma_b^2 / lambda, or the far field.
struct RelativeDistance {
    double r_over_rpw;
};
using ScanDistance = std::variant<FarField, RelativeDistance>;

struct AzimuthalScan {
    std::vector<double> phi;
    std::vector<double> intensity;  // normalised to a peak of 1
    double fwhm = 0.0;              // [rad]
    double distance = 0.0;          // [m], 0 for the far field
};

/// Beam-averaged azimuthal distribution at fixed theta and omega.
AzimuthalScan azimuthal_scan(const BeamProfile& beam, const Grating& grating, const ElectronKinematics& kin,
                             const ScanDistance& distance, double omega, double theta,
                             const std::vector<double>& phi_grid, const RadiationModel& model = {}, int nodes = 32);

} // namespace vsp
