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

#include "vsp/scan/output.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>

#include "vsp/errors.hpp"

namespace vsp::scan {

void Table::add_row(std::vector<std::string> row) {
    if (row.size() != columns.size()) throw DomainError("table row width does not match the header");
    rows.push_back(std::move(row));
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string to_csv(const Table& table) {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(table.columns);
    for (const auto& r : table.rows) line(r);
    for (const auto& t : table.trailer) out += "# " + t + '\n';
    return out;
}

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 460.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* const kPalette[] = {"#1f4e9c", "#c0392b", "#27864a", "#8e44ad", "#d68910", "#2c3e50", "#7f8c8d"};

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Axis {
    double lo, hi;
    bool log;

    double map(double v) const {
        const double a = log ? std::log10(lo) : lo;
        const double b = log ? std::log10(hi) : hi;
        const double x = log ? std::log10(v) : v;
        return b > a ? (x - a) / (b - a) : 0.5;
    }

    std::vector<double> ticks() const {
        std::vector<double> t;
        if (log) {
            for (double e = std::floor(std::log10(lo)); e <= std::ceil(std::log10(hi)); e += 1.0) {
                const double v = std::pow(10.0, e);
                if (v >= lo * (1 - 1e-12) && v <= hi * (1 + 1e-12)) t.push_back(v);
            }
            if (t.size() < 2) t = {lo, hi};
        } else {
            for (int i = 0; i <= 5; ++i) t.push_back(lo + (hi - lo) * i / 5.0);
        }
        return t;
    }
};

Axis make_axis(const std::vector<double>& values, bool log) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double v : values) {
        if (!std::isfinite(v) || (log && v <= 0.0)) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!std::isfinite(lo)) {
        lo = log ? 1.0 : 0.0;
        hi = log ? 10.0 : 1.0;
    }
    if (hi == lo) {
        if (log) {
            lo /= 2;
            hi *= 2;
        } else {
            lo -= 0.5;
            hi += 0.5;
        }
    }
    return {lo, hi, log};
}

std::size_t column_index(const Table& t, const std::string& name) {
    const auto it = std::find(t.columns.begin(), t.columns.end(), name);
    if (it == t.columns.end()) throw DomainError("emit_plot: unknown column '" + name + "'");
    return static_cast<std::size_t>(it - t.columns.begin());
}

double cell(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    return end == s.c_str() ? std::numeric_limits<double>::quiet_NaN() : v;
}

struct Series {
    std::string label;
    std::vector<double> x, y;
};

} // namespace

std::string emit_plot(const Table& table, const PlotStyle& style) {
    if (table.rows.empty()) throw DomainError("emit_plot: empty table");
    if (style.y.empty()) throw DomainError("emit_plot: no y column");
    const std::size_t xi = column_index(table, style.x);

    std::vector<Series> series;
    if (!style.series.empty()) {
        const std::size_t si = column_index(table, style.series);
        const std::size_t yi = column_index(table, style.y.front());
        std::map<std::string, std::size_t> slot;
        for (const auto& r : table.rows) {
            auto [it, fresh] = slot.emplace(r[si], series.size());
            if (fresh) series.push_back({r[si], {}, {}});
            series[it->second].x.push_back(cell(r[xi]));
            series[it->second].y.push_back(cell(r[yi]));
        }
    } else {
        for (const auto& name : style.y) {
            const std::size_t yi = column_index(table, name);
            Series s{name, {}, {}};
            for (const auto& r : table.rows) {
                s.x.push_back(cell(r[xi]));
                s.y.push_back(cell(r[yi]));
            }
            series.push_back(std::move(s));
        }
    }

    std::vector<double> xs, ys;
    for (const auto& s : series) {
        xs.insert(xs.end(), s.x.begin(), s.x.end());
        ys.insert(ys.end(), s.y.begin(), s.y.end());
    }
    const Axis ax = make_axis(xs, style.log_x);
    const Axis ay = make_axis(ys, style.log_y);
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double v) { return kLeft + pw * ax.map(v); };
    auto py = [&](double v) { return kTop + ph * (1.0 - ay.map(v)); };
    auto usable = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!style.log_x || x > 0) && (!style.log_y || y > 0);
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth) + "\" height=\"" + fixed(kHeight) +
           "\" viewBox=\"0 0 " + fixed(kWidth) + " " + fixed(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fixed(kLeft) + "\" y=\"24\" font-size=\"14\">" + escape(style.title) + "</text>\n";
    svg += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" + fixed(pw) + "\" height=\"" +
           fixed(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : ax.ticks()) {
        const double x = px(t);
        svg += "<line x1=\"" + fixed(x) + "\" y1=\"" + fixed(kTop + ph) + "\" x2=\"" + fixed(x) + "\" y2=\"" +
               fixed(kTop + ph + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fixed(x) + "\" y=\"" + fixed(kTop + ph + 18) + "\" text-anchor=\"middle\">" +
               escape(format_number(t)) + "</text>\n";
    }
    for (double t : ay.ticks()) {
        const double y = py(t);
        svg += "<line x1=\"" + fixed(kLeft - 5) + "\" y1=\"" + fixed(y) + "\" x2=\"" + fixed(kLeft) + "\" y2=\"" +
               fixed(y) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fixed(kLeft - 8) + "\" y=\"" + fixed(y + 4) + "\" text-anchor=\"end\">" +
               escape(format_number(t)) + "</text>\n";
    }
    svg += "<text x=\"" + fixed(kLeft + pw / 2) + "\" y=\"" + fixed(kHeight - 15) + "\" text-anchor=\"middle\">" +
           escape(style.x) + (style.log_x ? " (log)" : "") + "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* colour = kPalette[k % (sizeof kPalette / sizeof kPalette[0])];
        std::string points;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!usable(s.x[i], s.y[i])) continue;
            if (!points.empty()) points += ' ';
            points += fixed(px(s.x[i])) + "," + fixed(py(s.y[i]));
        }
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\" points=\"" +
               points + "\"/>\n";
        const double ly = kTop + 16.0 * (k + 1);
        svg += "<line x1=\"" + fixed(kWidth - kRight + 10) + "\" y1=\"" + fixed(ly - 4) + "\" x2=\"" +
               fixed(kWidth - kRight + 30) + "\" y2=\"" + fixed(ly - 4) + "\" stroke=\"" + colour +
               "\" stroke-width=\"1.5\"/>\n";
        svg += "<text x=\"" + fixed(kWidth - kRight + 35) + "\" y=\"" + fixed(ly) + "\">" + escape(s.label) +
               "</text>\n";
    }
    if (style.mark_max) {
        const auto& s = series.back();
        std::size_t best = s.y.size();
        for (std::size_t i = 0; i < s.y.size(); ++i) {
            if (usable(s.x[i], s.y[i]) && (best == s.y.size() || s.y[i] > s.y[best])) best = i;
        }
        if (best < s.y.size()) {
            svg += "<circle cx=\"" + fixed(px(s.x[best])) + "\" cy=\"" + fixed(py(s.y[best])) +
                   "\" r=\"4\" fill=\"#1f77d0\"/>\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw IoError("sha256: digest failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < length; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

void write_file(const std::string& path, const std::string& bytes) {
    namespace fs = std::filesystem;
    std::error_code ec;
    const fs::path p(path);
    if (p.has_parent_path()) {
        fs::create_directories(p.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + p.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) throw IoError("write failed for " + path);
}

} // namespace vsp::scan
