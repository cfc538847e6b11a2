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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "vsp/constants.hpp"
#include "vsp/errors.hpp"
#include "vsp/scan/config.hpp"
#include "vsp/scan/output.hpp"
#include "vsp/scan/runner.hpp"
#include "vsp/scan/sweep.hpp"

using namespace vsp;
using namespace vsp::scan;

namespace {

RunConfig configure(Experiment e, const std::string& preset = "", const KeyValues& over = {}) {
    KeyValues keys = default_keys();
    if (!preset.empty()) keys = merge(keys, preset_keys(preset));
    return resolve(e, merge(keys, over));
}

std::vector<std::string> problems_of(Experiment e, const KeyValues& over) {
    try {
        configure(e, "", over);
    } catch (const ConfigError& err) {
        return err.problems();
    }
    return {};
}

std::string header_of(const std::string& csv) { return csv.substr(0, csv.find('\n')); }

double cell(const Table& t, std::size_t row, const std::string& column) {
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
        if (t.columns[j] == column) return std::stod(t.rows.at(row).at(j));
    }
    throw std::out_of_range(column);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("vsp_test_scan_" + name);
    std::filesystem::remove_all(p);
    return p;
}

} // namespace

TEST_CASE("config text parsing") {
    const auto kv = parse_config_text("# comment\nphysics.beta = 0.6  # trailing\n\n grating.strips=42\n", "t");
    CHECK(kv.at("physics.beta") == "0.6");
    CHECK(kv.at("grating.strips") == "42");
    CHECK(kv.size() == 2);
}

TEST_CASE("malformed lines are all reported") {
    try {
        parse_config_text("novalue\n= 3\na = 1\na = 2\n", "f.cfg");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.problems().size() == 3);
    }
}

TEST_CASE("angles accept pi forms and degrees") {
    CHECK(configure(Experiment::polar, "", {{"detector.phi", "pi/4"}}).phi == doctest::Approx(kPi / 4));
    CHECK(configure(Experiment::polar, "", {{"detector.phi", "0.5*pi"}}).phi == doctest::Approx(kPi / 2));
    CHECK(configure(Experiment::polar, "", {{"detector.phi", "90deg"}}).phi == doctest::Approx(kPi / 2));
}

TEST_CASE("every violation is reported together") {
    const auto p = problems_of(Experiment::nscan, {{"physics.beta", "1.2"},
                                                   {"physics.sigma_perp", "-1"},
                                                   {"grating.strips", "0"},
                                                   {"no.such.key", "1"},
                                                   {"order", "x"}});
    CHECK(p.size() >= 5);
}

TEST_CASE("vortex-only experiments need a non-zero l") {
    CHECK(problems_of(Experiment::feasibility, {{"physics.ell", "0"}}).size() == 1);
    CHECK(problems_of(Experiment::moments, {{"physics.ell", "0"}}).size() == 1);
    CHECK(problems_of(Experiment::nscan, {{"physics.ell", "0"}}).empty());
}

TEST_CASE("finite detector must lie beyond the grating") {
    // fig1: L = 20 * 416 nm, r_pw = 0.22 m; 1e-6 r_pw is inside the grating length.
    KeyValues keys = merge(default_keys(), preset_keys("fig1"));
    keys["detector.distances"] = "1e-6,far";
    CHECK_THROWS_AS(resolve(Experiment::azimuthal, keys), ConfigError);
}

TEST_CASE("kinetic energy overrides beta") {
    const auto c = configure(Experiment::nscan, "", {{"physics.kinetic_kev", "100"}});
    CHECK(c.beta == doctest::Approx(0.548).epsilon(1e-3));
}

TEST_CASE("presets and layering order") {
    CHECK_THROWS_AS(preset_keys("fig2"), ConfigError);
    const auto f4 = configure(Experiment::polar, "fig4");
    CHECK(f4.strips == 800);
    CHECK(f4.period == doctest::Approx(100e-6));
    CHECK(f4.impact == doctest::Approx(33e-6));
    CHECK(f4.sigma_perp == doctest::Approx(20e-9));
    const auto f3 = configure(Experiment::nscan, "fig3");
    CHECK(f3.strips_min == 100);
    CHECK(f3.strips_max == 3500);
    const auto f1 = configure(Experiment::azimuthal, "fig1");
    CHECK(f1.distances.size() == 3);
    CHECK(f1.distances.back() == 0.0);
    // file over preset, flag over file
    KeyValues keys = merge(default_keys(), preset_keys("fig4"));
    keys = merge(keys, parse_config_text("grating.strips = 400\n"));
    CHECK(resolve(Experiment::polar, keys).strips == 400);
    keys = merge(keys, {{"grating.strips", "200"}});
    CHECK(resolve(Experiment::polar, keys).strips == 200);
}

TEST_CASE("csv formatting") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(-2.5e-20) == "-2.5e-20");
    Table t;
    t.columns = {"a", "b"};
    t.add_row({"1", "2"});
    t.trailer.push_back("summary x=1");
    CHECK(to_csv(t) == "a,b\n1,2\n# summary x=1\n");
    CHECK_THROWS_AS(t.add_row({"1"}), DomainError);
}

TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("svg is deterministic and self-contained") {
    Table t;
    t.columns = {"x", "y"};
    for (int i = 1; i <= 10; ++i) t.add_row({format_number(i), format_number(i * i * i)});
    const PlotStyle loglog{"cubic", "x", {"y"}, "", true, true, false};
    const auto a = emit_plot(t, loglog);
    CHECK(a == emit_plot(t, loglog));
    CHECK(a.rfind("<svg", 0) == 0);
    CHECK(a.find("<polyline") != std::string::npos);
    CHECK(a.find("href") == std::string::npos);
    const PlotStyle marked{"cubic", "x", {"y"}, "", false, false, true};
    CHECK(emit_plot(t, marked).find("<circle") != std::string::npos);
}

TEST_CASE("svg errors") {
    Table t;
    t.columns = {"x", "y"};
    CHECK_THROWS_AS(emit_plot(t, {"", "x", {"y"}, "", false, false, false}), DomainError);
    t.add_row({"1", "2"});
    CHECK_THROWS_AS(emit_plot(t, {"", "x", {"z"}, "", false, false, false}), DomainError);
}

TEST_CASE("parallel_map keeps order and reports the lowest failure") {
    auto square = [](std::size_t i) { return static_cast<double>(i * i); };
    CHECK(parallel_map(100, 1, square) == parallel_map(100, 8, square));
    CHECK(parallel_map(0, 4, square).empty());
    try {
        parallel_map(50, 8, [](std::size_t i) -> int {
            if (i == 7 || i == 30) throw NumericalError("point " + std::to_string(i));
            return 0;
        });
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        CHECK(std::string(e.what()) == "point 7");
    }
}

TEST_CASE("csv schemas are pinned per experiment") {
    const KeyValues small = {{"grating.strips", "50"},       {"grating.strips_min", "10"}, {"grating.strips_max", "100"},
                             {"grating.strips_count", "4"},  {"scan.theta_points", "5"},   {"scan.phi_points", "5"},
                             {"scan.omega_points", "5"},     {"scan.wigner_points", "3"},  {"wigner.nodes", "6"},
                             {"beam.nodes", "4"},            {"physics.ell", "1"}};
    const std::vector<std::pair<Experiment, std::string>> golden = {
        {Experiment::nscan, "N,W_e,W_emu,W_eQ1,W_eQ2,total"},
        {Experiment::polar, "theta,W_e,W_emu,W_eQ1,W_eQ2,total"},
        {Experiment::azimuthal, "series,r_over_rpw,phi,intensity_norm"},
        {Experiment::spectrum, "omega,lambda,point,packet"},
        {Experiment::feasibility, "lambda,n_min,n_max,L_max,z_R,ratio_Q2_at_n_max,empty"},
        {Experiment::wigner, "kx_over_dp,n,psi2,ratio"},
        {Experiment::moments, "quantity,closed_form,oracle"},
    };
    for (const auto& [e, header] : golden) {
        CAPTURE(experiment_name(e));
        KeyValues over = small;
        if (e == Experiment::azimuthal) over = merge(merge(preset_keys("fig1"), small), {{"physics.ell", "0"}});
        const auto out = execute(configure(e, "", over), 4);
        CHECK(header_of(to_csv(out.table)) == header);
        CHECK(!out.table.rows.empty());
    }
}

TEST_CASE("intensity unit is W_e at N = 100, theta = phi = pi/2") {
    const auto out = execute(configure(Experiment::nscan, "fig3", {{"grating.strips_min", "100"},
                                                                   {"grating.strips_max", "200"},
                                                                   {"grating.strips_count", "2"}}),
                             1);
    CHECK(cell(out.table, 0, "N") == 100);
    CHECK(cell(out.table, 0, "W_e") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cell(out.table, 1, "W_e") == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("fig3 nscan: linear charge term, cubic spreading term") {
    const auto out = execute(configure(Experiment::nscan, "fig3"), 4);
    const auto& t = out.table;
    const std::size_t last = t.rows.size() - 1;
    const double n0 = cell(t, 0, "N"), n1 = cell(t, last, "N");
    const double s1 = std::log(cell(t, last, "W_e") / cell(t, 0, "W_e")) / std::log(n1 / n0);
    const double s3 = std::log(cell(t, last, "W_eQ2") / cell(t, 0, "W_eQ2")) / std::log(n1 / n0);
    CHECK(s1 == doctest::Approx(1.0).epsilon(0.01));
    CHECK(s3 == doctest::Approx(3.0).epsilon(0.01));
    for (std::size_t i = 0; i <= last; ++i) {
        CHECK(cell(t, i, "total") >= cell(t, i, "W_e"));
    }
}

TEST_CASE("feasibility examples") {
    const auto f3 = execute(configure(Experiment::feasibility, "fig3"), 1).table;
    CHECK(cell(f3, 0, "n_max") == doctest::Approx(3500).epsilon(0.01));
    CHECK(cell(f3, 0, "L_max") == doctest::Approx(0.035).epsilon(0.01));
    const auto f4 = execute(configure(Experiment::feasibility, "fig4"), 1).table;
    CHECK(cell(f4, 0, "n_max") == doctest::Approx(800).epsilon(0.01));
    CHECK(cell(f4, 0, "L_max") == doctest::Approx(0.08).epsilon(0.01));
    const auto small = execute(configure(Experiment::feasibility, "",
                                         {{"physics.sigma_perp", "10e-9"},
                                          {"physics.ell", "200"},
                                          {"grating.period", "416e-9"},
                                          {"grating.impact", "100e-9"}}),
                               1)
                           .table;
    const double l_max = cell(small, 0, "L_max");
    CHECK(l_max > 3e-6);
    CHECK(l_max < 30e-6);
}

TEST_CASE("empty feasibility window is flagged with text") {
    // n_min / n_max = sqrt(lambda_c / lambda) / margin: closes once lambda < lambda_c / margin^2.
    const auto out = execute(configure(Experiment::feasibility, "",
                                       {{"grating.period", "1e-12"}, {"grating.impact", "1e-12"}}),
                             1);
    CHECK(cell(out.table, 0, "empty") == 1);
    CHECK(out.summary.find("empty") != std::string::npos);
}

TEST_CASE("run writes csv, svg and a manifest with checksums") {
    const auto dir = scratch("run");
    auto c = configure(Experiment::polar, "fig4",
                       {{"scan.theta_points", "31"}, {"output.dir", dir.string()}, {"output.plot", "true"}});
    const auto r = run(c, 2);
    REQUIRE(r.files.size() == 3);
    CHECK(r.files[0].name == "polar.csv");
    CHECK(r.files[1].name == "polar.svg");
    CHECK(r.files[2].name == "manifest.json");
    for (const auto& f : r.files) CHECK(sha256_hex(slurp(dir / f.name)) == f.sha256);
    const auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(m["experiment"] == "polar");
    CHECK(m["version"] == kVersion);
    CHECK(m["config"]["grating.strips"] == "800");
    CHECK(m["constants"]["lambda_c_m"].get<double>() == kComptonWavelength);
    CHECK(m["constants"]["margin"].get<double>() == doctest::Approx(0.154));
    CHECK(m["files"].size() == 2);
    CHECK(m["files"][0]["sha256"] == r.files[0].sha256);
    CHECK(slurp(dir / "polar.csv").find("# summary theta_peak_W_e=") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("1 and 8 workers give byte-identical files") {
    for (const std::string preset : {"fig1", "fig3", "fig4"}) {
        CAPTURE(preset);
        const Experiment e = preset == "fig1" ? Experiment::azimuthal
                             : preset == "fig3" ? Experiment::nscan
                                                : Experiment::polar;
        const auto a = scratch(preset + "_1"), b = scratch(preset + "_8");
        const auto ra = run(configure(e, preset, {{"output.dir", a.string()}, {"output.plot", "true"}}), 1);
        const auto rb = run(configure(e, preset, {{"output.dir", b.string()}, {"output.plot", "true"}}), 8);
        CHECK(ra.files[0].sha256 == rb.files[0].sha256);
        CHECK(ra.files[1].sha256 == rb.files[1].sha256);
        std::filesystem::remove_all(a);
        std::filesystem::remove_all(b);
    }
}

namespace {

int cli(const std::string& args) {
    const std::string cmd = std::string(VSP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("cli exit codes") {
    const auto dir = scratch("cli");
    CHECK(cli("nscan --preset fig3 --out " + dir.string()) == 0);
    CHECK(std::filesystem::exists(dir / "nscan.csv"));
    CHECK(std::filesystem::exists(dir / "manifest.json"));
    CHECK(cli("nscan --set physics.beta=2 --out " + dir.string()) == 2);
    CHECK(cli("nscan --preset fig9") == 2);
    CHECK(cli("bogus") == 2);
    CHECK(cli("nscan --config " + (dir / "missing.cfg").string()) == 4);
    {
        std::ofstream f(dir / "blocker");
        f << "x";
    }
    CHECK(cli("nscan --out " + (dir / "blocker" / "sub").string()) == 4);
    {
        std::ofstream f(dir / "run.cfg");
        f << "grating.strips_count = 3\n";
    }
    CHECK(cli("nscan --preset fig3 --config " + (dir / "run.cfg").string() + " --out " + dir.string()) == 0);
    std::filesystem::remove_all(dir);
}
