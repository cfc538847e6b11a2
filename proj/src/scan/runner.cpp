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

#include "vsp/scan/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>

#include "json.hpp"
#include "vsp/errors.hpp"
#include "vsp/farfield.hpp"
#include "vsp/numerics/kernels.hpp"
#include "vsp/numerics/oracles.hpp"
#include "vsp/prewave.hpp"
#include "vsp/scan/sweep.hpp"
#include "vsp/wavepacket.hpp"

namespace vsp::scan {

namespace {

using numerics::MomentKind;

std::string num(double v) { return format_number(v); }

RadiationModel model_of(const RunConfig& c) {
    RadiationModel m;
    m.c_mu = c.c_mu;
    m.c_q1 = c.c_q1;
    m.spectral_power = c.spectral_power;
    return m;
}

PacketModel packet_of(const RunConfig& c, const ElectronKinematics& kin) {
    const Vec3 mean = axial_momentum(kin);
    return c.ell == 0 ? PacketModel::gaussian(mean, 1.0 / c.sigma_perp)
                      : PacketModel::vortex(mean, 1.0 / c.sigma_perp, c.ell);
}

// Intensity unit: W_e(N = 100, theta = phi = pi/2) on the first order.
double anchor(const RunConfig& c, const ElectronKinematics& kin, const RadiationModel& model) {
    return charge_intensity_line(make_grating(c.period, 100, c.impact), kin, far_detector(kPi / 2, kPi / 2), 1, model);
}

// Re-raises a numerical failure with the grid point that caused it.
template <class F>
auto at_point(const std::string& where, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const NumericalError& e) {
        throw NumericalError(where + ": " + e.what(), e.best_estimate(), e.error_estimate());
    } catch (const DomainError& e) {
        throw DomainError(where + ": " + e.what());
    }
}

std::vector<double> linear_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return g;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0) || !(y[i] > 0)) continue;
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        n += 1;
    }
    return n < 2 ? std::nan("") : (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ExperimentOutput nscan(const RunConfig& c, int workers) {
    const auto kin = kinematics_from_beta(c.beta);
    const auto model = model_of(c);
    const auto packet = packet_of(c, kin);
    const double unit = anchor(c, kin, model);

    std::set<int> unique;
    for (int i = 0; i < c.strips_count; ++i) {
        const double t = static_cast<double>(i) / (c.strips_count - 1);
        unique.insert(static_cast<int>(std::lround(std::exp(std::log(c.strips_min) * (1 - t) + std::log(c.strips_max) * t))));
    }
    const std::vector<int> ns(unique.begin(), unique.end());
    const auto rows = parallel_map(ns.size(), workers, [&](std::size_t i) {
        return at_point("N=" + std::to_string(ns[i]), [&] {
            return total_line_intensity(make_grating(c.period, ns[i], c.impact), packet, kin,
                                        far_detector(c.theta, c.phi), c.order, model, c.waist_z0);
        });
    });

    ExperimentOutput out;
    out.table.columns = {"N", "W_e", "W_emu", "W_eQ1", "W_eQ2", "total"};
    std::vector<double> x, we, wq;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const auto& r = rows[i];
        out.table.add_row({std::to_string(ns[i]), num(r.W_e / unit), num(r.W_emu / unit), num(r.W_eQ1 / unit),
                           num(r.W_eQ2 / unit), num(r.total / unit)});
        x.push_back(ns[i]);
        we.push_back(r.W_e);
        wq.push_back(r.W_eQ2);
    }
    const double s1 = loglog_slope(x, we);
    const double s3 = loglog_slope(x, wq);
    out.table.trailer.push_back("summary slope_W_e=" + num(s1) + " slope_W_eQ2=" + num(s3));
    if (rows.front().spreading_undefined) out.table.trailer.push_back("warning W_eQ2 is defined for order 1 only; set to 0");
    out.summary = "nscan: " + std::to_string(ns.size()) + " grating sizes, log-log slope W_e " + num(s1) +
                  ", W_eQ2 " + num(s3);
    out.plot = {"Line intensity vs number of strips", "N", {"W_e", "W_eQ2", "total"}, "", true, true, false};
    return out;
}

ExperimentOutput polar(const RunConfig& c, int workers) {
    const auto kin = kinematics_from_beta(c.beta);
    const auto model = model_of(c);
    const auto packet = packet_of(c, kin);
    const auto grating = make_grating(c.period, c.strips, c.impact);
    const double unit = anchor(c, kin, model);
    const auto thetas = linear_grid(c.theta_min, c.theta_max, c.theta_points);
    const auto rows = parallel_map(thetas.size(), workers, [&](std::size_t i) {
        return at_point("theta=" + num(thetas[i]), [&] {
            return total_line_intensity(grating, packet, kin, far_detector(thetas[i], c.phi), c.order, model, c.waist_z0);
        });
    });
    const auto shift = at_point("peak search", [&] {
        return polar_peak_shift(grating, packet, kin, c.phi, c.order, model, true, c.waist_z0);
    });

    ExperimentOutput out;
    out.table.columns = {"theta", "W_e", "W_emu", "W_eQ1", "W_eQ2", "total"};
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        const auto& r = rows[i];
        out.table.add_row({num(thetas[i]), num(r.W_e / unit), num(r.W_emu / unit), num(r.W_eQ1 / unit),
                           num(r.W_eQ2 / unit), num(r.total / unit)});
    }
    const double deg = shift.shift * 180.0 / kPi;
    out.table.trailer.push_back("summary theta_peak_W_e=" + num(shift.theta_charge) + " theta_peak_total=" +
                                num(shift.theta_total) + " shift_deg=" + num(deg));
    out.summary = "polar: peak of W_e at " + num(shift.theta_charge * 180.0 / kPi) + " deg, total at " +
                  num(shift.theta_total * 180.0 / kPi) + " deg, shift " + num(deg) + " deg";
    out.plot = {"Polar distribution", "theta", {"W_e", "total"}, "", false, false, true};
    return out;
}

ExperimentOutput azimuthal(const RunConfig& c, int workers) {
    const auto kin = kinematics_from_beta(c.beta);
    const auto model = model_of(c);
    const auto grating = make_grating(c.period, c.strips, c.impact);
    const BeamProfile beam{c.sigma_b, c.beam_count};
    const double lambda = sp_wavelength(grating, kin, c.theta, c.order);
    const double omega = kTwoPi / lambda;
    const auto phis = linear_grid(c.phi_min, c.phi_max, c.phi_points);
    const auto scans = parallel_map(c.distances.size(), workers, [&](std::size_t i) {
        const double rel = c.distances[i];
        const ScanDistance d = rel > 0.0 ? ScanDistance{RelativeDistance{rel}} : ScanDistance{FarField{}};
        return at_point(rel > 0.0 ? "r/r_pw=" + num(rel) : std::string("far field"), [&] {
            return azimuthal_scan(beam, grating, kin, d, omega, c.theta, phis, model, c.beam_nodes);
        });
    });

    ExperimentOutput out;
    out.table.columns = {"series", "r_over_rpw", "phi", "intensity_norm"};
    std::ostringstream summary;
    summary << "azimuthal: lambda " << num(lambda) << " m, r_pw " << num(prewave_radius(c.sigma_b, lambda)) << " m;";
    for (std::size_t i = 0; i < scans.size(); ++i) {
        const double rel = c.distances[i];
        const std::string name = rel > 0.0 ? "r" + num(rel) : "far";
        const std::string r = rel > 0.0 ? num(rel) : "inf";
        for (std::size_t j = 0; j < phis.size(); ++j) {
            out.table.add_row({name, r, num(phis[j]), num(scans[i].intensity[j])});
        }
        out.table.trailer.push_back("summary series=" + name + " fwhm_rad=" + num(scans[i].fwhm));
        summary << " FWHM(" << name << ") " << num(scans[i].fwhm) << " rad";
    }
    out.summary = summary.str();
    out.plot = {"Azimuthal distribution", "phi", {"intensity_norm"}, "series", false, false, false};
    return out;
}

double fwhm_or_nan(const std::vector<double>& x, const std::vector<double>& y) {
    try {
        return numerics::full_width_half_maximum(x, y);
    } catch (const NumericalError&) {
        return std::nan("");
    }
}

ExperimentOutput spectrum(const RunConfig& c, int workers) {
    const auto kin = kinematics_from_beta(c.beta);
    const auto model = model_of(c);
    const auto packet = packet_of(c, kin);
    const auto grating = make_grating(c.period, c.strips, c.impact);
    const auto det = far_detector(c.theta, c.phi);
    const double unit = anchor(c, kin, model);
    const double centre = kTwoPi / sp_wavelength(grating, kin, c.theta, c.order);
    const double span = c.omega_span > 0.0 ? c.omega_span : 4.0 / (c.strips * c.order);
    const auto omegas = linear_grid(centre * (1 - span), centre * (1 + span), c.omega_points);
    struct Point {
        double point, packet;
    };
    const auto rows = parallel_map(omegas.size(), workers, [&](std::size_t i) {
        return at_point("omega=" + num(omegas[i]), [&] {
            return Point{charge_intensity_spectral(grating, kin, omegas[i], det, model),
                         wigner_averaged_spectral(packet, grating, det, omegas[i], model, c.wigner_nodes)};
        });
    });

    ExperimentOutput out;
    out.table.columns = {"omega", "lambda", "point", "packet"};
    std::vector<double> a, b;
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        out.table.add_row({num(omegas[i]), num(kTwoPi / omegas[i]), num(rows[i].point / unit), num(rows[i].packet / unit)});
        a.push_back(rows[i].point);
        b.push_back(rows[i].packet);
    }
    const double wa = fwhm_or_nan(omegas, a);
    const double wb = fwhm_or_nan(omegas, b);
    out.table.trailer.push_back("summary fwhm_point=" + num(wa) + " fwhm_packet=" + num(wb));
    out.summary = "spectrum: line FWHM point charge " + num(wa) + " rad/m, packet " + num(wb) + " rad/m";
    out.plot = {"Spectral line", "omega", {"point", "packet"}, "", false, false, false};
    return out;
}

ExperimentOutput feasibility(const RunConfig& c, int) {
    const auto kin = kinematics_from_beta(c.beta);
    const auto packet = packet_of(c, kin);
    const auto grating = make_grating(c.period, c.strips, c.impact);
    const double lambda = sp_wavelength(grating, kin, c.theta, c.order);
    const auto w = feasibility_window(packet, lambda, c.margin);
    const double l_max = w.n_max * c.period;
    const double z_r = rayleigh_length(packet, kin);
    const int n_top = std::max(1, static_cast<int>(std::lround(w.n_max)));
    const double ratio = quadrupole_spreading_ratio(make_grating(c.period, n_top, c.impact), packet, kin, c.theta);

    ExperimentOutput out;
    out.table.columns = {"lambda", "n_min", "n_max", "L_max", "z_R", "ratio_Q2_at_n_max", "empty"};
    out.table.add_row({num(lambda), num(w.n_min), num(w.n_max), num(l_max), num(z_r), num(ratio), w.empty ? "1" : "0"});
    std::ostringstream s;
    s << "feasibility: " << num(w.n_min) << " << N << " << num(w.n_max) << " (margin " << num(c.margin)
      << "), L_max " << num(l_max) << " m, z_R " << num(z_r) << " m, W_eQ2/W_e at N_max " << num(ratio);
    if (w.empty) {
        s << "\n  window is empty: the lower bound sqrt(lambda_c/lambda) sigma/(lambda_c |l|) is not below the"
             " margin-scaled upper bound, so no grating size keeps both recoil and quadratic terms negligible";
        out.table.trailer.push_back("warning empty feasibility window");
    }
    out.summary = s.str();
    out.plottable = false;
    return out;
}

ExperimentOutput wigner_probe(const RunConfig& c, int workers) {
    const auto kin = kinematics_from_beta(c.beta);
    const auto packet = packet_of(c, kin);
    const double dp = packet.delta_p();
    const auto us = linear_grid(-3.0, 3.0, c.wigner_points);
    struct Point {
        double n, density;
    };
    const auto rows = parallel_map(us.size(), workers, [&](std::size_t i) {
        return at_point("k_x/dp=" + num(us[i]), [&] {
            const Vec3& m = packet.mean_momentum();
            const Vec3 p{m[0] + us[i] * dp, m[1] + 0.5 * dp, m[2]};
            return Point{wigner(packet, {0.0, 0.0, 0.0}, p, 0.0), packet.density(p)};
        });
    });
    // n/|psi|^2 is constant for a Gaussian; its value there sets the unit of the ratio column.
    const auto gauss = PacketModel::gaussian(packet.mean_momentum(), dp);
    const double unit = at_point("gaussian reference", [&] {
        return wigner(gauss, {0.0, 0.0, 0.0}, gauss.mean_momentum(), 0.0) / gauss.density(gauss.mean_momentum());
    });
    ExperimentOutput out;
    out.table.columns = {"kx_over_dp", "n", "psi2", "ratio"};
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < us.size(); ++i) {
        const double ratio = rows[i].n / rows[i].density / unit;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        out.table.add_row({num(us[i]), num(rows[i].n), num(rows[i].density), num(ratio)});
    }
    out.summary = "wigner: n(0,p,0)/|psi(p)|^2, in units of its Gaussian value, ranges over [" + num(lo) + ", " + num(hi) + "] along k_y = dp/2";
    out.plot = {"Wigner function at x = 0 over |psi|^2", "kx_over_dp", {"ratio"}, "", false, false, false};
    return out;
}

ExperimentOutput moments(const RunConfig& c, int workers) {
    const auto kin = kinematics_from_beta(c.beta);
    const auto packet = packet_of(c, kin);
    const auto closed = packet_moments(packet, 0.0);
    const std::vector<MomentKind> kinds = {MomentKind::normalization, MomentKind::dipole, MomentKind::quadrupole,
                                           MomentKind::magnetic};
    const auto oracle = parallel_map(kinds.size(), workers, [&](std::size_t i) {
        return at_point("oracle " + std::to_string(i), [&] { return numerics::oracle_moment_quadrature(packet, kinds[i]); });
    });
    const auto& q = oracle[2].tensor;
    const auto& cq = closed.quadrupole;
    ExperimentOutput out;
    out.table.columns = {"quantity", "closed_form", "oracle"};
    const std::string nan = "nan";
    out.table.add_row({"normalization", "1", num(oracle[0].scalar)});
    out.table.add_row({"mu_z", num(closed.mu[2]), num(oracle[3].vector[2])});
    out.table.add_row({"Q_xx", num(cq[0][0]), num(q[0][0])});
    out.table.add_row({"Q_yy", num(cq[1][1]), num(q[1][1])});
    out.table.add_row({"Q_zz", num(cq[2][2]), num(q[2][2])});
    out.table.add_row({"Q_trace", num(cq[0][0] + cq[1][1] + cq[2][2]), num(q[0][0] + q[1][1] + q[2][2])});
    out.table.add_row({"Q_zz_over_Q_xx", num(cq[2][2] / cq[0][0]), num(q[2][2] / q[0][0])});
    out.table.add_row({"d_x", num(closed.dipole[0]), num(oracle[1].vector[0])});
    out.table.add_row({"d_y", num(closed.dipole[1]), num(oracle[1].vector[1])});
    out.table.add_row({"d_z", num(closed.dipole[2]), num(oracle[1].vector[2])});
    out.table.add_row({"t_d", num(spreading_time(packet)), nan});
    out.table.add_row({"z_R", num(rayleigh_length(packet, kin)), nan});
    out.summary = "moments: Q_zz/Q_xx closed " + num(cq[2][2] / cq[0][0]) + ", oracle " + num(q[2][2] / q[0][0]) +
                  "; mu_z closed " + num(closed.mu[2]) + " m, oracle " + num(oracle[3].vector[2]) + " m";
    out.plottable = false;
    return out;
}

} // namespace

ExperimentOutput execute(const RunConfig& config, int workers) {
    switch (config.experiment) {
    case Experiment::nscan: return nscan(config, workers);
    case Experiment::polar: return polar(config, workers);
    case Experiment::azimuthal: return azimuthal(config, workers);
    case Experiment::spectrum: return spectrum(config, workers);
    case Experiment::feasibility: return feasibility(config, workers);
    case Experiment::wigner: return wigner_probe(config, workers);
    case Experiment::moments: return moments(config, workers);
    }
    throw DomainError("unknown experiment");
}

RunResult run(const RunConfig& config, int workers) {
    const auto start = std::chrono::steady_clock::now();
    const ExperimentOutput result = execute(config, workers);
    const std::string base = experiment_name(config.experiment);
    const std::filesystem::path dir(config.out_dir);

    RunResult out;
    out.summary = result.summary;
    auto emit = [&](const std::string& name, const std::string& bytes) {
        write_file((dir / name).string(), bytes);
        out.files.push_back({name, sha256_hex(bytes), bytes.size()});
    };
    emit(base + ".csv", to_csv(result.table));
    if (config.plot && result.plottable) emit(base + ".svg", emit_plot(result.table, result.plot));
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    nlohmann::ordered_json manifest;
    manifest["artifact"] = "vsp";
    manifest["version"] = kVersion;
    manifest["experiment"] = base;
    manifest["config"] = config.echo;
    manifest["seed"] = config.seed;
    manifest["workers"] = workers;
    manifest["constants"] = {{"lambda_c_m", kComptonWavelength},
                             {"electron_rest_energy_keV", kElectronRestEnergyKeV},
                             {"c_mu", config.c_mu},
                             {"c_q1", config.c_q1},
                             {"margin", config.margin},
                             {"spectral_power", config.spectral_power}};
    manifest["intensity_unit"] = "W_e(N=100, theta=phi=pi/2, order 1) = 1";
    manifest["wall_time_s"] = out.wall_seconds;
    manifest["summary"] = result.summary;
    manifest["files"] = nlohmann::ordered_json::array();
    for (const auto& f : out.files) {
        manifest["files"].push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    }
    emit("manifest.json", manifest.dump(2) + "\n");
    return out;
}

int default_workers() {
    if (const char* env = std::getenv("VSP_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<int>(v);
    }
    return 1;
}

} // namespace vsp::scan
