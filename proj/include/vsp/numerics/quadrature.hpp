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

// Adaptive Gauss-Kronrod quadrature on intervals and axis-aligned boxes.
//
// The 1-D kernel is a global adaptive G10/K21 scheme: the interval with the
// largest error estimate is bisected until the summed estimate drops below
// max(abs_tol, rel_tol * |I|). Boxes of dimension 2 and 3 are handled by
// iterated integration. Integrands may return double or std::array<double, M>
// (used for complex values and for several moments sharing one subdivision).

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "vsp/errors.hpp"

namespace vsp::numerics {

struct QuadratureSpec {
    double rel_tol = 1e-6;
    double abs_tol = 1e-14;
    int max_subdivisions = 2000;

    // Throws DomainError unless tolerances are positive and the budget >= 10.
    void validate() const;
};

template <class V>
struct Estimate {
    V value{};
    double error = 0.0;
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }

template <std::size_t M>
double magnitude(const std::array<double, M>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline void axpy(double& acc, double w, double v) { acc += w * v; }

template <std::size_t M>
void axpy(std::array<double, M>& acc, double w, const std::array<double, M>& v) {
    for (std::size_t i = 0; i < M; ++i) acc[i] += w * v[i];
}

inline double difference(double a, double b) { return std::abs(a - b); }

template <std::size_t M>
double difference(const std::array<double, M>& a, const std::array<double, M>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < M; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double abs_value(double v) { return std::abs(v); }

template <std::size_t M>
double abs_value(const std::array<double, M>& v) {
    return magnitude(v);
}

// Kronrod abscissae (positive half, descending) and weights; the Gauss
// 10-point rule uses the odd-indexed abscissae.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525886460, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class V>
struct Segment {
    double a;
    double b;
    V value;
    double error;
};

template <class V, class F>
Segment<V> kronrod21(F& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    V kronrod{};
    V gauss{};
    double resabs = 0.0;

    const V fc = f(centre);
    axpy(kronrod, kWgk[10], fc);
    resabs += kWgk[10] * abs_value(fc);
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        const V f1 = f(centre - dx);
        const V f2 = f(centre + dx);
        axpy(kronrod, kWgk[j], f1);
        axpy(kronrod, kWgk[j], f2);
        resabs += kWgk[j] * (abs_value(f1) + abs_value(f2));
        if (j % 2 == 1) {
            axpy(gauss, kWg[j / 2], f1);
            axpy(gauss, kWg[j / 2], f2);
        }
    }
    V value{};
    axpy(value, half, kronrod);
    V gauss_value{};
    axpy(gauss_value, half, gauss);
    resabs *= std::abs(half);

    // |K - G| bounds the K21 error generously; the floor stops refinement
    // once the difference is at rounding level.
    double err = difference(value, gauss_value);
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
    err = std::max(err, floor);
    return {a, b, value, err};
}

} // namespace detail

// Integrates f over [a, b]. Throws NumericalError (with the best estimate)
// if the subdivision budget is exhausted.
template <class F>
auto integrate(F&& f, double a, double b, const QuadratureSpec& spec = {})
    -> Estimate<std::decay_t<std::invoke_result_t<F&, double>>> {
    using V = std::decay_t<std::invoke_result_t<F&, double>>;
    auto by_error = [](const detail::Segment<V>& l, const detail::Segment<V>& r) {
        return l.error < r.error;
    };

    std::vector<detail::Segment<V>> heap;
    heap.reserve(static_cast<std::size_t>(spec.max_subdivisions) + 1);
    heap.push_back(detail::kronrod21<V>(f, a, b));
    V total = heap.front().value;
    double total_error = heap.front().error;

    auto converged = [&] {
        const double target = std::max(spec.abs_tol, spec.rel_tol * detail::magnitude(total));
        return total_error <= target;
    };

    int subdivisions = 1;
    while (!converged()) {
        if (subdivisions >= spec.max_subdivisions) {
            throw NumericalError("adaptive quadrature: subdivision budget exhausted on [" +
                                     std::to_string(a) + ", " + std::to_string(b) + "]",
                                 detail::magnitude(total), total_error);
        }
        std::pop_heap(heap.begin(), heap.end(), by_error);
        const detail::Segment<V> worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        auto left = detail::kronrod21<V>(f, worst.a, mid);
        auto right = detail::kronrod21<V>(f, mid, worst.b);

        // Re-sum from scratch to keep the result independent of rounding drift.
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), by_error);
        ++subdivisions;

        total = V{};
        total_error = 0.0;
        for (const auto& s : heap) {
            detail::axpy(total, 1.0, s.value);
            total_error += s.error;
        }
    }
    return {total, total_error};
}

// Integrates f over consecutive pieces [breaks[i], breaks[i+1]] and sums.
// Each piece is held to the full tolerance.
template <class F>
auto integrate_pieces(F&& f, std::span<const double> breaks, const QuadratureSpec& spec = {})
    -> Estimate<std::decay_t<std::invoke_result_t<F&, double>>> {
    using V = std::decay_t<std::invoke_result_t<F&, double>>;
    Estimate<V> sum{};
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        auto piece = integrate(f, breaks[i], breaks[i + 1], spec);
        detail::axpy(sum.value, 1.0, piece.value);
        sum.error += piece.error;
    }
    return sum;
}

struct Box {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t dims() const { return lower.size(); }
};

// Iterated integration over a box of dimension 1-3. f receives the point as
// a span of length box.dims(). The reported error is the outer estimate plus
// the largest inner estimate scaled by the outer width.
template <class F>
auto integrate_box(F&& f, const Box& box, const QuadratureSpec& spec = {})
    -> Estimate<std::decay_t<std::invoke_result_t<F&, std::span<const double>>>> {
    const std::size_t dims = box.dims();
    if (dims < 1 || dims > 3 || box.upper.size() != dims) {
        throw DomainError("integrate_box: box must have 1 to 3 matching dimensions");
    }

    std::array<double, 3> x{};
    auto point = [&] { return std::span<const double>(x.data(), dims); };

    if (dims == 1) {
        auto g = [&](double x0) {
            x[0] = x0;
            return f(point());
        };
        return integrate(g, box.lower[0], box.upper[0], spec);
    }

    // Inner integrals are resolved ten times tighter than the outer one.
    QuadratureSpec inner = spec;
    inner.rel_tol = spec.rel_tol * 0.1;

    double worst_inner = 0.0;
    if (dims == 2) {
        const double w0 = box.upper[0] - box.lower[0];
        inner.abs_tol = spec.abs_tol * 0.1 / std::max(std::abs(w0), 1e-300);
        auto outer = [&](double x0) {
            auto g = [&](double x1) {
                x[0] = x0;
                x[1] = x1;
                return f(point());
            };
            auto r = integrate(g, box.lower[1], box.upper[1], inner);
            worst_inner = std::max(worst_inner, r.error);
            return r.value;
        };
        auto r = integrate(outer, box.lower[0], box.upper[0], spec);
        r.error += worst_inner * std::abs(w0);
        return r;
    }

    const double w0 = box.upper[0] - box.lower[0];
    const double w1 = box.upper[1] - box.lower[1];
    QuadratureSpec middle = inner;
    middle.abs_tol = spec.abs_tol * 0.1 / std::max(std::abs(w0), 1e-300);
    QuadratureSpec innermost = inner;
    innermost.rel_tol = spec.rel_tol * 0.01;
    innermost.abs_tol = middle.abs_tol * 0.1 / std::max(std::abs(w1), 1e-300);
    double worst_middle = 0.0;
    auto outer = [&](double x0) {
        auto mid = [&](double x1) {
            auto g = [&](double x2) {
                x[0] = x0;
                x[1] = x1;
                x[2] = x2;
                return f(point());
            };
            auto r = integrate(g, box.lower[2], box.upper[2], innermost);
            worst_inner = std::max(worst_inner, r.error);
            return r.value;
        };
        auto r = integrate(mid, box.lower[1], box.upper[1], middle);
        worst_middle = std::max(worst_middle, r.error);
        return r.value;
    };
    auto r = integrate(outer, box.lower[0], box.upper[0], spec);
    r.error += (worst_middle + worst_inner * std::abs(w1)) * std::abs(w0);
    return r;
}

using ScalarField = std::function<double(std::span<const double>)>;

// Type-erased entry point for scalar fields over 1-3 dimensional boxes.
Estimate<double> integrate_adaptive(const ScalarField& f, const Box& box,
                                    const QuadratureSpec& spec = {});

} // namespace vsp::numerics
