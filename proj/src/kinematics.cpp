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

#include "vsp/kinematics.hpp"

#include <cmath>
#include <string>

#include "vsp/errors.hpp"

namespace vsp {

ElectronKinematics kinematics_from_beta(double beta) {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw DomainError("beta must lie in (0, 1), got " + std::to_string(beta));
    }
    const double gamma = 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
    return {beta, gamma, beta * gamma};
}

ElectronKinematics kinematics_from_kinetic_kev(double kinetic_kev) {
    if (!(kinetic_kev > 0.0) || !std::isfinite(kinetic_kev)) {
        throw DomainError("kinetic energy must be positive, got " + std::to_string(kinetic_kev));
    }
    const double gamma = 1.0 + kinetic_kev / kElectronRestEnergyKeV;
    // beta*gamma = sqrt(gamma^2 - 1) without cancellation for small T.
    const double t = kinetic_kev / kElectronRestEnergyKeV;
    const double beta_gamma = std::sqrt(t * (t + 2.0));
    return {beta_gamma / gamma, gamma, beta_gamma};
}

ElectronKinematics kinematics_from_momentum(double momentum) {
    if (!(momentum > 0.0)) throw DomainError("momentum must be positive");
    const double beta_gamma = momentum * kComptonWavelength;
    const double gamma = std::sqrt(1.0 + beta_gamma * beta_gamma);
    return {beta_gamma / gamma, gamma, beta_gamma};
}

double momentum_of(const ElectronKinematics& kin) {
    return kin.beta_gamma / kComptonWavelength;
}

Grating make_grating(double period, int strips, double impact) {
    if (!(period > 0.0)) throw DomainError("grating period must be positive");
    if (strips < 1) throw DomainError("grating needs at least one strip");
    if (!(impact >= 0.0)) throw DomainError("impact parameter must be non-negative");
    return {period, strips, impact};
}

DetectorGeometry far_detector(double theta, double phi) {
    if (!(theta >= 0.0 && theta <= kPi)) throw DomainError("theta must lie in [0, pi]");
    if (!std::isfinite(phi)) throw DomainError("phi must be finite");
    return {theta, phi, FarField{}};
}

DetectorGeometry finite_detector(double theta, double phi, double r, const Grating& grating) {
    auto det = far_detector(theta, phi);
    if (!(r > grating.length())) {
        throw DomainError("detector distance " + std::to_string(r) +
                          " m must exceed the grating length " + std::to_string(grating.length()) + " m");
    }
    det.distance = FiniteDistance{r};
    return det;
}

double sp_wavelength(const Grating& grating, const ElectronKinematics& kin, double theta, int order) {
    if (order < 1) throw DomainError("diffraction order must be >= 1");
    return grating.period * (1.0 / kin.beta - std::cos(theta)) / order;
}

double photon_coherence_width(const ElectronKinematics& kin, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("wavelength must be positive");
    return kin.beta_gamma * lambda;
}

double prewave_radius(double sigma_b, double lambda) {
    if (!(sigma_b > 0.0) || !(lambda > 0.0)) {
        throw DomainError("beam width and wavelength must be positive");
    }
    return sigma_b * sigma_b / lambda;
}

double azimuthal_cosine(double phi) {
    const double c = std::cos(phi);
    return std::abs(c) < 1e-15 ? 0.0 : c;
}

} // namespace vsp
