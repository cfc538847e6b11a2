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

#include <functional>
#include <span>
#include <vector>

namespace vsp::numerics {

// Gauss-Hermite rule for the weight exp(-x^2) on the real line.
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point rule, nodes ascending. Exact for polynomials of degree 2n-1.
GaussHermiteRule gauss_hermite(int n);

// Central differences with step h.
double central_first(const std::function<double(double)>& f, double x, double h);
double central_second(const std::function<double(double)>& f, double x, double h);

// Result of a bracketed maximum search.
struct Peak {
    double argmax;
    double value;
};

struct PeakSearch {
    double tol = 1e-4;        // on the abscissa
    double flat_tol = 1e-300; // variation below this is a degenerate peak
    int grid_points = 65;     // coarse scan that seeds the golden section
};

// Locates a local maximum of f inside [lo, hi]. A coarse grid picks the
// best sample; golden-section search then refines within the neighbouring
// grid cells until the bracket is shorter than tol. Maxima at an end point
// of the interval are returned as such. Throws NumericalError when f is flat.
Peak find_peak(const std::function<double(double)>& f, double lo, double hi,
               const PeakSearch& search = {});

// Full width at half maximum of a sampled profile around its largest sample,
// with linear interpolation of the two half-maximum crossings. Throws
// NumericalError when a crossing lies outside the sampled range.
double full_width_half_maximum(std::span<const double> x, std::span<const double> y);

} // namespace vsp::numerics
