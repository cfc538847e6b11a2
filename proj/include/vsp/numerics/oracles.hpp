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

#include "vsp/constants.hpp"
#include "vsp/numerics/quadrature.hpp"
#include "vsp/wavepacket.hpp"

namespace vsp::numerics {

enum class MomentKind { normalization, dipole, quadrupole, magnetic };

// Brute-force moments of a packet. Only the fields belonging to the
// requested kind are filled; the rest stay zero.
struct OracleMoment {
    double scalar = 0.0;  // normalization, or L_z for the magnetic kind
    Vec3 vector{};        // dipole [m], or magnetic moment L_z lambda_c/2 z [m]
    Mat3 tensor{};        // 3<x_i x_j> - <r^2> delta_ij about the centroid [m^2]
    double error = 0.0;   // largest quadrature error estimate, in the units of the integrand
};

// Direct 3-D quadrature of |psi|^2 and of products of psi and its complex
// finite-difference derivatives. Nothing here goes through the closed forms
// of the wave-packet module.
OracleMoment oracle_moment_quadrature(const PacketModel& packet, MomentKind kind,
                                      const QuadratureSpec& spec = {});

struct DenseAverage {
    double discrete;   // (1/N) sum_{m<N} (m d)^2 / z_R^2 with d = z_max / N
    double continuum;  // z_max^2 / (3 z_R^2)
};

DenseAverage oracle_dense_z_average(double z_max, double z_R, int n_strips);

} // namespace vsp::numerics
