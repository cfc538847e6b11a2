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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vsp/errors.hpp"
#include "vsp/scan/config.hpp"
#include "vsp/scan/runner.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw vsp::scan::IoError("cannot read config file '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

int main(int argc, char** argv) {
    using namespace vsp::scan;

    CLI::App app{"vsp: Smith-Purcell radiation from vortex electron packets"};
    app.set_version_flag("--version", kVersion);
    std::string experiment, config_path, preset, out_dir;
    std::vector<std::string> sets;
    bool plot = false;
    int workers = default_workers();
    app.add_option("experiment", experiment, "azimuthal | polar | nscan | spectrum | feasibility | wigner | moments")
        ->required();
    app.add_option("--config", config_path, "config file with 'key = value' lines");
    app.add_option("--preset", preset, "fig1 | fig3 | fig4 (applied before the config file)");
    app.add_option("--out", out_dir, "output directory");
    app.add_flag("--plot", plot, "also write <experiment>.svg");
    app.add_option("--workers", workers, "worker threads (default: VSP_WORKERS or 1)");
    app.add_option("--set", sets, "key=value override, repeatable");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        Experiment exp;
        if (!parse_experiment(experiment, exp)) throw ConfigError({"unknown experiment '" + experiment + "'"});
        if (workers < 1) throw ConfigError({"--workers must be >= 1"});

        KeyValues keys = default_keys();
        if (!preset.empty()) keys = merge(keys, preset_keys(preset));
        if (!config_path.empty()) keys = merge(keys, parse_config_text(read_text(config_path), config_path));
        KeyValues flags;
        std::vector<std::string> problems;
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos || eq == 0) {
                problems.push_back("--set '" + s + "': expected key=value");
                continue;
            }
            flags[s.substr(0, eq)] = s.substr(eq + 1);
        }
        if (!problems.empty()) throw ConfigError(problems);
        if (!out_dir.empty()) flags["output.dir"] = out_dir;
        if (plot) flags["output.plot"] = "true";
        keys = merge(keys, flags);

        const RunConfig config = resolve(exp, keys);
        const RunResult result = run(config, workers);
        std::cout << result.summary << "\n";
        for (const auto& f : result.files) std::cout << "  " << f.name << "  " << f.sha256 << "\n";
        std::printf("  wall time %.3f s, %d worker(s)\n", result.wall_seconds, workers);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error:\n";
        for (const auto& p : e.problems()) std::cerr << "  - " << p << "\n";
        return kExitConfig;
    } catch (const vsp::DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const vsp::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << " (best estimate " << e.best_estimate() << ", error "
                  << e.error_estimate() << ")\n";
        return kExitNumerical;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    }
}
