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

#include "vsp/numerics/kernels.hpp"
#include "vsp/numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vsp/errors.hpp"

namespace vsp::numerics {

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
        throw DomainError("QuadratureSpec: tolerances must be positive");
    }
    if (max_subdivisions < 10) {
        throw DomainError("QuadratureSpec: max_subdivisions must be at least 10");
    }
}

Estimate<double> integrate_adaptive(const ScalarField& f, const Box& box,
                                    const QuadratureSpec& spec) {
    spec.validate();
    return integrate_box([&](std::span<const double> x) { return f(x); }, box, spec);
}

GaussHermiteRule gauss_hermite(int n) {
    if (n < 1) throw DomainError("gauss_hermite: need at least one node");
    GaussHermiteRule rule;
    rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
    rule.weights.assign(static_cast<std::size_t>(n), 0.0);

    // Newton iteration on the orthonormal Hermite recurrence, seeded with
    // the usual asymptotic guesses for the largest roots.
    const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * rule.nodes[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * rule.nodes[1];
        } else {
            z = 2.0 * z - rule.nodes[static_cast<std::size_t>(i - 2)];
        }
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = pim4;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        // Temporarily store descending positive roots at the front.
        rule.nodes[static_cast<std::size_t>(i)] = z;
        rule.weights[static_cast<std::size_t>(i)] = 2.0 / (pp * pp);
    }
    std::vector<double> x(static_cast<std::size_t>(n));
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int i = 0; i < m; ++i) {
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        x[lo] = -rule.nodes[lo];
        w[lo] = rule.weights[lo];
        x[hi] = rule.nodes[lo];
        w[hi] = rule.weights[lo];
    }
    if (n % 2 == 1) x[static_cast<std::size_t>(m - 1)] = 0.0;
    rule.nodes = std::move(x);
    rule.weights = std::move(w);
    return rule;
}

double central_first(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

double central_second(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

Peak find_peak(const std::function<double(double)>& f, double lo, double hi,
               const PeakSearch& search) {
    if (!(hi > lo)) throw DomainError("find_peak: empty interval");
    const int n = std::max(search.grid_points, 3);
    std::vector<double> xs(static_cast<std::size_t>(n));
    std::vector<double> ys(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
        ys[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
    }
    const auto [mn, mx] = std::minmax_element(ys.begin(), ys.end());
    if (!(*mx - *mn > search.flat_tol)) {
        throw NumericalError("find_peak: function is flat on the interval", *mx, *mx - *mn);
    }
    const auto best = static_cast<std::size_t>(std::distance(ys.begin(), mx));

    double a = xs[best == 0 ? 0 : best - 1];
    double b = xs[std::min(best + 1, xs.size() - 1)];
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > search.tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    Peak peak{0.5 * (a + b), f(0.5 * (a + b))};
    // The golden section cannot reach the interval ends; keep a better end sample.
    if (ys[best] > peak.value && (best == 0 || best + 1 == ys.size())) {
        peak = {xs[best], ys[best]};
    }
    return peak;
}

double full_width_half_maximum(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 3) throw DomainError("fwhm: need at least three matching samples");
    const auto peak = static_cast<std::size_t>(std::distance(y.begin(), std::max_element(y.begin(), y.end())));
    const double half = 0.5 * y[peak];
    auto crossing = [&](std::size_t inside, std::size_t outside) {
        const double t = (y[inside] - half) / (y[inside] - y[outside]);
        return x[inside] + t * (x[outside] - x[inside]);
    };
    std::size_t i = peak;
    while (i > 0 && y[i - 1] > half) --i;
    if (i == 0) throw NumericalError("fwhm: left half-maximum crossing not sampled", 0.0, 0.0);
    const double left = crossing(i, i - 1);
    std::size_t j = peak;
    while (j + 1 < y.size() && y[j + 1] > half) ++j;
    if (j + 1 == y.size()) throw NumericalError("fwhm: right half-maximum crossing not sampled", 0.0, 0.0);
    const double right = crossing(j, j + 1);
    return right - left;
}

} // namespace vsp::numerics
