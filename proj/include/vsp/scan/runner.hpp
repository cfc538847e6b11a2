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

#include <string>
#include <vector>

#include "vsp/scan/config.hpp"
#include "vsp/scan/output.hpp"

namespace vsp::scan {

inline constexpr const char* kVersion = "1.0.0";

/// Table, plot layout and human-readable summary of one experiment.
struct ExperimentOutput {
    Table table;
    PlotStyle plot;
    bool plottable = true;
    std::string summary;
};

/// Computes the experiment without touching the file system.
ExperimentOutput execute(const RunConfig& config, int workers);

struct OutputFile {
    std::string name;
    std::string sha256;
    std::size_t bytes = 0;
};

struct RunResult {
    std::vector<OutputFile> files;  // data files, then manifest.json
    double wall_seconds = 0.0;
    std::string summary;
};

/// Executes and writes <experiment>.csv, the optional <experiment>.svg and
/// manifest.json into config.out_dir.
RunResult run(const RunConfig& config, int workers);

/// VSP_WORKERS when set to a positive integer, otherwise 1.
int default_workers();

} // namespace vsp::scan
