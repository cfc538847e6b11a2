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

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace vsp::scan {

enum class Experiment { azimuthal, polar, nscan, spectrum, feasibility, wigner, moments };

/// Every config violation found, reported together.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

/// Flat dotted key -> raw value text.
using KeyValues = std::map<std::string, std::string>;

/// Keys understood by the runner, with their defaults.
const KeyValues& default_keys();

/// Preset key overrides for "fig1", "fig3" and "fig4". Throws ConfigError for other names.
KeyValues preset_keys(const std::string& name);

/// Parses "key = value" lines; '#' starts a comment. Throws ConfigError
/// listing every malformed line.
KeyValues parse_config_text(const std::string& text, const std::string& source = "config");

/// Later layers override earlier ones.
KeyValues merge(const KeyValues& base, const KeyValues& over);

bool parse_experiment(const std::string& name, Experiment& out);
std::string experiment_name(Experiment e);

/// Parsed, validated configuration.
struct RunConfig {
    Experiment experiment = Experiment::nscan;
    KeyValues echo;  // effective keys after layering

    // physics
    double beta = 0.5;
    int ell = 10;
    double sigma_perp = 100e-9;
    // grating
    double period = 10e-6;
    int strips = 100;
    double impact = 2.7e-6;
    int strips_min = 100;
    int strips_max = 3500;
    int strips_count = 15;
    // beam
    double sigma_b = 300e-6;
    double beam_count = 1.0;
    int beam_nodes = 32;
    // detector
    double theta = 1.5707963267948966;
    double phi = 1.5707963267948966;
    std::vector<double> distances;  // r / r_pw; 0 encodes the far field
    // scans
    double theta_min = 0.0;
    double theta_max = 3.141592653589793;
    int theta_points = 181;
    double phi_min = 0.0;
    double phi_max = 3.141592653589793;
    int phi_points = 181;
    int omega_points = 201;
    double omega_span = 0.0;  // relative half-span; 0 selects 4 / (N n)
    int wigner_points = 41;
    int wigner_nodes = 12;
    int order = 1;
    // model
    double c_mu = 1.0;
    double c_q1 = 1.0;
    double spectral_power = 4.0;
    double margin = 0.15;
    double waist_z0 = 0.0;
    // run
    long long seed = 0;
    std::string out_dir = "out";
    bool plot = false;
};

/// Builds a RunConfig from layered keys, checking every value against the
/// physics preconditions. Throws ConfigError with all problems at once.
RunConfig resolve(Experiment experiment, const KeyValues& keys);

} // namespace vsp::scan
