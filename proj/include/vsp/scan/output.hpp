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

#include <stdexcept>
#include <string>
#include <vector>

namespace vsp::scan {

/// File-system failure while writing run outputs.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A CSV table kept as formatted text so that what is written is exactly
/// what was computed. Trailer lines are written after the rows with a
/// leading "# ".
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> trailer;

    void add_row(std::vector<std::string> row);
};

/// "%.12g".
std::string format_number(double v);

/// Header, rows and trailer, '\n' line endings.
std::string to_csv(const Table& table);

struct PlotStyle {
    std::string title;
    std::string x;               // column on the horizontal axis
    std::vector<std::string> y;  // one polyline per column ...
    std::string series;          // ... or per distinct value of this column (with y.size() == 1)
    bool log_x = false;
    bool log_y = false;
    bool mark_max = false;  // circle at the maximum of the last polyline
};

/// Minimal self-contained SVG plot. Throws DomainError for an empty table
/// or unknown columns.
std::string emit_plot(const Table& table, const PlotStyle& style);

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(const std::string& bytes);

/// Writes the bytes, creating parent directories. Throws IoError.
void write_file(const std::string& path, const std::string& bytes);

} // namespace vsp::scan
