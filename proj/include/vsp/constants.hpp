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
#include <numbers>

namespace vsp {

// Natural units (hbar = c = 1) with lengths in metres: momenta and
// frequencies are in rad/m, times are expressed as lengths.

/// Reduced Compton wavelength of the electron, 1/m_e [m].
inline constexpr double kComptonWavelength = 3.8616e-13;

/// Electron rest energy [keV], used only to convert kinetic energies.
inline constexpr double kElectronRestEnergyKeV = 511.0;

/// Electron mass in natural units [rad/m].
inline constexpr double kElectronMass = 1.0 / kComptonWavelength;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

} // namespace vsp
