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

#include <variant>

#include "vsp/constants.hpp"

namespace vsp {

/// Mean motion of a monoenergetic electron.
struct ElectronKinematics {
    double beta = 0.0;
    double gamma = 1.0;
    double beta_gamma = 0.0;
};

/// Throws DomainError unless 0 < beta < 1.
ElectronKinematics kinematics_from_beta(double beta);

/// gamma = 1 + T / m_e with m_e = 511 keV. Throws DomainError for T <= 0.
ElectronKinematics kinematics_from_kinetic_kev(double kinetic_kev);

/// Kinematics of a plane-wave component with momentum magnitude |p| [rad/m].
ElectronKinematics kinematics_from_momentum(double momentum);

/// Momentum magnitude beta*gamma*m_e [rad/m] for the given kinematics.
double momentum_of(const ElectronKinematics& kin);

/// N strips of period d; the electron passes at height h above the surface.
struct Grating {
    double period = 0.0;  // d [m]
    int strips = 1;       // N
    double impact = 0.0;  // h [m]

    double length() const { return period * strips; }
};

/// Validating constructor: d > 0, N >= 1, h >= 0.
Grating make_grating(double period, int strips, double impact);

struct FarField {};

struct FiniteDistance {
    double r = 0.0;  // [m]
};

/// Observation direction (polar angle from the beam axis, azimuth around it
/// with phi = pi/2 along the grating normal) and distance.
struct DetectorGeometry {
    double theta = kPi / 2;
    double phi = kPi / 2;
    std::variant<FarField, FiniteDistance> distance = FarField{};

    bool far_field() const { return std::holds_alternative<FarField>(distance); }
};

DetectorGeometry far_detector(double theta, double phi);

/// Finite-distance detector. The pre-wave model needs r > L, so the grating
/// is passed for validation. Throws DomainError otherwise.
DetectorGeometry finite_detector(double theta, double phi, double r, const Grating& grating);

/// Smith-Purcell dispersion: lambda = d (1/beta - cos theta) / n.
double sp_wavelength(const Grating& grating, const ElectronKinematics& kin, double theta, int order);

/// Transverse coherence length of the virtual photon, beta*gamma*lambda.
double photon_coherence_width(const ElectronKinematics& kin, double lambda);

/// Pre-wave zone radius sigma_b^2 / lambda.
double prewave_radius(double sigma_b, double lambda);

/// cos(phi) with the representation residue around pi/2 + k*pi flushed to 0.
double azimuthal_cosine(double phi);

} // namespace vsp
