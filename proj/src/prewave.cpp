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

#include "vsp/prewave.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "vsp/errors.hpp"
#include "vsp/numerics/kernels.hpp"

namespace vsp {

void BeamProfile::validate() const {
    if (!(sigma_b > 0.0) || !std::isfinite(sigma_b)) throw DomainError("beam width sigma_b must be positive");
    if (!(count >= 1.0) || !std::isfinite(count)) throw DomainError("beam electron count must be >= 1");
}

double prewave_intensity(const Grating& grating, const ElectronKinematics& kin, const DetectorGeometry& det,
                         double omega, const Offset& source_offset, const RadiationModel& model) {
    if (!(omega > 0.0)) throw DomainError("prewave_intensity: omega must be positive");
    const double st = std::sin(det.theta);
    const double k[3] = {st * std::cos(det.phi), st * std::sin(det.phi), std::cos(det.theta)};
    const double ox = source_offset[0];
    const double oy = source_offset[1];

    std::complex<double> sum = 0.0;
    double theta = det.theta;
    double phi = det.phi;
    if (det.far_field()) {
        const double common = -(k[0] * ox + k[1] * oy);
        for (int m = 0; m < grating.strips; ++m) {
            const double z = m * grating.period;
            sum += std::polar(1.0, omega * (z / kin.beta - k[2] * z + common));
        }
    } else {
        const double r = std::get<FiniteDistance>(det.distance).r;
        if (!(r > grating.length())) {
            throw DomainError("prewave_intensity: detector distance must exceed the grating length");
        }
        // The detector sits at distance r from the grating centre z_c.
        const double zc = 0.5 * (grating.strips - 1) * grating.period;
        for (int m = 0; m < grating.strips; ++m) {
            const double z = m * grating.period;
            const double ks = k[0] * ox + k[1] * oy + k[2] * (z - zc);
            const double s2 = ox * ox + oy * oy + (z - zc) * (z - zc);
            const double big_r = std::sqrt(r * r - 2.0 * r * ks + s2);
            const double excess = (s2 - 2.0 * r * ks) / (big_r + r);  // R_m - r
            sum += std::polar(r / big_r, omega * (z / kin.beta + excess));
        }
        // Envelope angles from the displaced grating centre to the detector.
        const double v[3] = {r * k[0] - ox, r * k[1] - oy, r * k[2]};
        theta = std::atan2(std::hypot(v[0], v[1]), v[2]);
        phi = std::atan2(v[1], v[0]);
    }
    const double weight = model.spectral_power == 0.0 ? 1.0 : std::pow(omega * grating.period / kTwoPi, model.spectral_power);
    return std::norm(sum) * weight * envelope(grating, kin, kTwoPi / omega, theta, phi);
}

double beam_averaged_intensity(const BeamProfile& beam, const Grating& grating, const ElectronKinematics& kin,
                               const DetectorGeometry& det, double omega, const RadiationModel& model, int nodes) {
    beam.validate();
    const auto gh = numerics::gauss_hermite(nodes);
    const double scale = std::sqrt(2.0) * beam.sigma_b;
    double sum = 0.0;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < gh.nodes.size(); ++j) {
            row += gh.weights[j] *
                   prewave_intensity(grating, kin, det, omega, {scale * gh.nodes[i], scale * gh.nodes[j]}, model);
        }
        sum += gh.weights[i] * row;
    }
    return beam.count * sum / kPi;
}

AzimuthalScan azimuthal_scan(const BeamProfile& beam, const Grating& grating, const ElectronKinematics& kin,
                             const ScanDistance& distance, double omega, double theta,
                             const std::vector<double>& phi_grid, const RadiationModel& model, int nodes) {
    beam.validate();
    if (phi_grid.empty()) throw DomainError("azimuthal_scan: empty phi grid");
    if (!std::is_sorted(phi_grid.begin(), phi_grid.end())) throw DomainError("azimuthal_scan: phi grid must be sorted");
    if (!(omega > 0.0)) throw DomainError("azimuthal_scan: omega must be positive");

    AzimuthalScan out;
    out.phi = phi_grid;
    if (const auto* rel = std::get_if<RelativeDistance>(&distance)) {
        if (!(rel->r_over_rpw > 0.0)) throw DomainError("azimuthal_scan: r / r_pw must be positive");
        out.distance = rel->r_over_rpw * prewave_radius(beam.sigma_b, kTwoPi / omega);
    }
    out.intensity.reserve(phi_grid.size());
    for (double phi : phi_grid) {
        const auto det = out.distance > 0.0 ? finite_detector(theta, phi, out.distance, grating) : far_detector(theta, phi);
        out.intensity.push_back(beam_averaged_intensity(beam, grating, kin, det, omega, model, nodes));
    }
    const double peak = *std::max_element(out.intensity.begin(), out.intensity.end());
    if (!(peak > 0.0)) throw NumericalError("azimuthal_scan: profile vanishes everywhere", 0.0, 0.0);
    for (double& v : out.intensity) v /= peak;
    out.fwhm = out.phi.size() >= 3 ? numerics::full_width_half_maximum(out.phi, out.intensity) : 0.0;
    return out;
}

} // namespace vsp
