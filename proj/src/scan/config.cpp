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

#include "vsp/scan/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "vsp/constants.hpp"
#include "vsp/kinematics.hpp"

namespace vsp::scan {

namespace {

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) out += "\n  " + s;
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool plain_real(const std::string& s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

// Accepts a plain number, "pi", "pi/<x>", "<x>*pi" or "<x>deg".
bool parse_real(const std::string& raw, double& out) {
    const std::string s = trim(raw);
    if (s.empty()) return false;
    if (s == "pi") {
        out = kPi;
        return true;
    }
    if (s.rfind("pi/", 0) == 0) {
        double d;
        if (!plain_real(s.substr(3), d) || d == 0.0) return false;
        out = kPi / d;
        return true;
    }
    if (s.size() > 3 && s.compare(s.size() - 3, 3, "*pi") == 0) {
        double f;
        if (!plain_real(s.substr(0, s.size() - 3), f)) return false;
        out = f * kPi;
        return true;
    }
    if (s.size() > 3 && s.compare(s.size() - 3, 3, "deg") == 0) {
        double f;
        if (!plain_real(trim(s.substr(0, s.size() - 3)), f)) return false;
        out = f * kPi / 180.0;
        return true;
    }
    return plain_real(s, out);
}

bool parse_int(const std::string& raw, long long& out) {
    const std::string s = trim(raw);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
}

// Reads keys into typed fields, remembering each problem.
class Reader {
public:
    explicit Reader(const KeyValues& keys) : keys_(keys) {}

    double real(const std::string& key) {
        double v = 0.0;
        if (!parse_real(keys_.at(key), v)) problems.push_back(key + ": not a number: '" + keys_.at(key) + "'");
        return v;
    }

    int integer(const std::string& key) {
        long long v = 0;
        if (!parse_int(keys_.at(key), v) || v < -2147483647LL || v > 2147483647LL) {
            problems.push_back(key + ": not an integer: '" + keys_.at(key) + "'");
            return 0;
        }
        return static_cast<int>(v);
    }

    long long wide(const std::string& key) {
        long long v = 0;
        if (!parse_int(keys_.at(key), v)) problems.push_back(key + ": not an integer: '" + keys_.at(key) + "'");
        return v;
    }

    bool boolean(const std::string& key) {
        const std::string v = trim(keys_.at(key));
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        problems.push_back(key + ": expected true or false, got '" + v + "'");
        return false;
    }

    std::string text(const std::string& key) { return trim(keys_.at(key)); }

    void require(bool ok, const std::string& message) {
        if (!ok) problems.push_back(message);
    }

    std::vector<std::string> problems;

private:
    const KeyValues& keys_;
};

} // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error("invalid configuration:" + join(problems)), problems_(std::move(problems)) {}

const KeyValues& default_keys() {
    static const KeyValues keys = {
        {"physics.beta", "0.5"},
        {"physics.kinetic_kev", ""},
        {"physics.ell", "10"},
        {"physics.sigma_perp", "100e-9"},
        {"grating.period", "10e-6"},
        {"grating.strips", "100"},
        {"grating.impact", "2.7e-6"},
        {"grating.strips_min", "100"},
        {"grating.strips_max", "3500"},
        {"grating.strips_count", "15"},
        {"beam.sigma_b", "300e-6"},
        {"beam.count", "1"},
        {"beam.nodes", "32"},
        {"detector.theta", "pi/2"},
        {"detector.phi", "pi/2"},
        {"detector.distances", "0.3,0.5,far"},
        {"scan.theta_min", "0"},
        {"scan.theta_max", "pi"},
        {"scan.theta_points", "181"},
        {"scan.phi_min", "0"},
        {"scan.phi_max", "pi"},
        {"scan.phi_points", "181"},
        {"scan.omega_points", "201"},
        {"scan.omega_span", "0"},
        {"scan.wigner_points", "41"},
        {"wigner.nodes", "12"},
        {"order", "1"},
        {"model.c_mu", "1"},
        {"model.c_q1", "1"},
        {"model.spectral_power", "4"},
        {"model.margin", "0.15"},
        {"model.waist_z0", "0"},
        {"seed", "0"},
        {"output.dir", "out"},
        {"output.plot", "false"},
    };
    return keys;
}

KeyValues preset_keys(const std::string& name) {
    if (name == "fig1") {
        // lambda = d on the first order fixes cos(theta) = 1/beta - 1.
        return {{"physics.beta", "0.7"},
                {"grating.period", "416e-9"},
                {"grating.strips", "20"},
                {"grating.impact", "200e-9"},
                {"beam.sigma_b", "300e-6"},
                {"detector.theta", number(std::acos(1.0 / 0.7 - 1.0))},
                {"detector.distances", "0.3,0.5,far"},
                {"scan.phi_points", "181"}};
    }
    if (name == "fig3") {
        return {{"physics.beta", "0.5"},          {"physics.ell", "10"},        {"physics.sigma_perp", "100e-9"},
                {"grating.period", "10e-6"},      {"grating.impact", "2.7e-6"}, {"grating.strips", "3500"},
                {"grating.strips_min", "100"},    {"grating.strips_max", "3500"},
                {"grating.strips_count", "15"},   {"detector.theta", "pi/2"},   {"detector.phi", "pi/2"},
                {"model.margin", "0.135"}};
    }
    if (name == "fig4") {
        return {{"physics.beta", "0.676"},     {"physics.ell", "10"},      {"physics.sigma_perp", "20e-9"},
                {"grating.period", "100e-6"},  {"grating.impact", "33e-6"}, {"grating.strips", "800"},
                {"detector.theta", "pi/2"},    {"detector.phi", "pi/2"},   {"scan.theta_min", "0"},
                {"scan.theta_max", "pi"},      {"scan.theta_points", "181"}, {"model.margin", "0.154"}};
    }
    throw ConfigError({"unknown preset '" + name + "' (expected fig1, fig3 or fig4)"});
}

KeyValues parse_config_text(const std::string& text, const std::string& source) {
    KeyValues out;
    std::vector<std::string> problems;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = source + ":" + std::to_string(number);
        if (eq == std::string::npos) {
            problems.push_back(where + ": expected 'key = value'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) {
            problems.push_back(where + ": missing key");
            continue;
        }
        if (out.count(key)) problems.push_back(where + ": duplicate key '" + key + "'");
        out[key] = trim(line.substr(eq + 1));
    }
    if (!problems.empty()) throw ConfigError(problems);
    return out;
}

KeyValues merge(const KeyValues& base, const KeyValues& over) {
    KeyValues out = base;
    for (const auto& [k, v] : over) out[k] = v;
    return out;
}

bool parse_experiment(const std::string& name, Experiment& out) {
    static const std::map<std::string, Experiment> names = {
        {"azimuthal", Experiment::azimuthal}, {"polar", Experiment::polar},
        {"nscan", Experiment::nscan},         {"spectrum", Experiment::spectrum},
        {"feasibility", Experiment::feasibility}, {"wigner", Experiment::wigner},
        {"moments", Experiment::moments}};
    const auto it = names.find(name);
    if (it == names.end()) return false;
    out = it->second;
    return true;
}

std::string experiment_name(Experiment e) {
    switch (e) {
    case Experiment::azimuthal: return "azimuthal";
    case Experiment::polar: return "polar";
    case Experiment::nscan: return "nscan";
    case Experiment::spectrum: return "spectrum";
    case Experiment::feasibility: return "feasibility";
    case Experiment::wigner: return "wigner";
    case Experiment::moments: return "moments";
    }
    return "unknown";
}

RunConfig resolve(Experiment experiment, const KeyValues& keys) {
    const KeyValues& defaults = default_keys();
    std::vector<std::string> unknown;
    for (const auto& [k, v] : keys) {
        if (!defaults.count(k)) unknown.push_back("unknown key '" + k + "'");
    }
    const KeyValues all = merge(defaults, keys);
    Reader rd(all);
    rd.problems = unknown;

    RunConfig c;
    c.experiment = experiment;
    c.echo = all;

    const std::string kev = rd.text("physics.kinetic_kev");
    if (!kev.empty()) {
        const double t = rd.real("physics.kinetic_kev");
        rd.require(t > 0.0, "physics.kinetic_kev must be positive");
        if (t > 0.0) c.beta = kinematics_from_kinetic_kev(t).beta;
    } else {
        c.beta = rd.real("physics.beta");
    }
    rd.require(c.beta > 0.0 && c.beta < 1.0, "physics.beta must lie in (0, 1)");
    c.ell = rd.integer("physics.ell");
    c.sigma_perp = rd.real("physics.sigma_perp");
    rd.require(c.sigma_perp > 0.0, "physics.sigma_perp must be positive");

    c.period = rd.real("grating.period");
    rd.require(c.period > 0.0, "grating.period must be positive");
    c.strips = rd.integer("grating.strips");
    rd.require(c.strips >= 1, "grating.strips must be >= 1");
    c.impact = rd.real("grating.impact");
    rd.require(c.impact >= 0.0, "grating.impact must be >= 0");
    c.strips_min = rd.integer("grating.strips_min");
    c.strips_max = rd.integer("grating.strips_max");
    c.strips_count = rd.integer("grating.strips_count");
    rd.require(c.strips_min >= 1, "grating.strips_min must be >= 1");
    rd.require(c.strips_max >= c.strips_min, "grating.strips_max must be >= grating.strips_min");
    rd.require(c.strips_count >= 2, "grating.strips_count must be >= 2");

    c.sigma_b = rd.real("beam.sigma_b");
    rd.require(c.sigma_b > 0.0, "beam.sigma_b must be positive");
    c.beam_count = rd.real("beam.count");
    rd.require(c.beam_count >= 1.0, "beam.count must be >= 1");
    c.beam_nodes = rd.integer("beam.nodes");
    rd.require(c.beam_nodes >= 1 && c.beam_nodes <= 200, "beam.nodes must lie in [1, 200]");

    c.theta = rd.real("detector.theta");
    rd.require(c.theta >= 0.0 && c.theta <= kPi, "detector.theta must lie in [0, pi]");
    c.phi = rd.real("detector.phi");
    {
        std::istringstream list(rd.text("detector.distances"));
        std::string item;
        while (std::getline(list, item, ',')) {
            item = trim(item);
            if (item == "far") {
                c.distances.push_back(0.0);
                continue;
            }
            double v = 0.0;
            if (!parse_real(item, v) || !(v > 0.0)) {
                rd.problems.push_back("detector.distances: '" + item + "' is neither 'far' nor a positive r / r_pw");
            } else {
                c.distances.push_back(v);
            }
        }
        rd.require(!c.distances.empty(), "detector.distances must list at least one distance");
    }

    c.theta_min = rd.real("scan.theta_min");
    c.theta_max = rd.real("scan.theta_max");
    c.theta_points = rd.integer("scan.theta_points");
    rd.require(c.theta_min >= 0.0 && c.theta_max <= kPi && c.theta_min < c.theta_max,
               "scan.theta_min < scan.theta_max must lie in [0, pi]");
    rd.require(c.theta_points >= 3, "scan.theta_points must be >= 3");
    c.phi_min = rd.real("scan.phi_min");
    c.phi_max = rd.real("scan.phi_max");
    c.phi_points = rd.integer("scan.phi_points");
    rd.require(c.phi_min < c.phi_max, "scan.phi_min must be below scan.phi_max");
    rd.require(c.phi_points >= 3, "scan.phi_points must be >= 3");
    c.omega_points = rd.integer("scan.omega_points");
    rd.require(c.omega_points >= 3, "scan.omega_points must be >= 3");
    c.omega_span = rd.real("scan.omega_span");
    rd.require(c.omega_span >= 0.0 && c.omega_span < 1.0, "scan.omega_span must lie in [0, 1)");
    c.wigner_points = rd.integer("scan.wigner_points");
    rd.require(c.wigner_points >= 2, "scan.wigner_points must be >= 2");
    c.wigner_nodes = rd.integer("wigner.nodes");
    rd.require(c.wigner_nodes >= 1 && c.wigner_nodes <= 64, "wigner.nodes must lie in [1, 64]");
    c.order = rd.integer("order");
    rd.require(c.order >= 1, "order must be >= 1");

    c.c_mu = rd.real("model.c_mu");
    c.c_q1 = rd.real("model.c_q1");
    c.spectral_power = rd.real("model.spectral_power");
    rd.require(c.spectral_power >= 0.0, "model.spectral_power must be >= 0");
    c.margin = rd.real("model.margin");
    rd.require(c.margin >= 0.1 && c.margin <= 0.2, "model.margin must lie in [0.1, 0.2]");
    c.waist_z0 = rd.real("model.waist_z0");

    c.seed = rd.wide("seed");
    c.out_dir = rd.text("output.dir");
    rd.require(!c.out_dir.empty(), "output.dir must not be empty");
    c.plot = rd.boolean("output.plot");

    const bool needs_vortex = experiment == Experiment::feasibility || experiment == Experiment::moments;
    rd.require(!needs_vortex || c.ell != 0, "physics.ell must be non-zero for the " + experiment_name(experiment) +
                                                " experiment");

    // Finite detector distances must clear the grating for the pre-wave model.
    if (experiment == Experiment::azimuthal && c.beta > 0.0 && c.beta < 1.0 && c.period > 0.0 && c.strips >= 1 &&
        c.sigma_b > 0.0 && c.order >= 1) {
        const double lambda = c.period * (1.0 / c.beta - std::cos(c.theta)) / c.order;
        for (double rel : c.distances) {
            if (rel > 0.0 && !(rel * c.sigma_b * c.sigma_b / lambda > c.period * c.strips)) {
                rd.problems.push_back("detector.distances: r = " + number(rel) +
                                      " r_pw does not exceed the grating length");
            }
        }
    }

    if (!rd.problems.empty()) throw ConfigError(rd.problems);
    return c;
}

} // namespace vsp::scan
