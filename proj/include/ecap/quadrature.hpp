// SPDX-License-Identifier: Apache-2.0
//
// ecap - effective capacity of antenna-selection MIMO links
// Copyright (C) 2026 the ecap authors
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

#ifndef ECAP_QUADRATURE_HPP
#define ECAP_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace ecap {

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 2000;

    void validate() const {
        if (!(rel_tol > 0.0))
            throw std::invalid_argument("QuadratureSpec: rel_tol must be > 0");
        if (!(abs_tol >= 0.0))
            throw std::invalid_argument("QuadratureSpec: abs_tol must be >= 0");
        if (max_subdivisions < 1)
            throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
    }
};

struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kGk15KronrodW[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGk15GaussW[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
    double integral;
    double error;
};

template <class F>
PanelResult gk15(F&& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    double fv[15];
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(center - half * kGk15Nodes[j]);
        fv[14 - j] = f(center + half * kGk15Nodes[j]);
    }
    fv[7] = f(center);

    double result_gauss = kGk15GaussW[3] * fv[7];
    double result_kronrod = kGk15KronrodW[7] * fv[7];
    double mean_abs = kGk15KronrodW[7] * std::abs(fv[7]);
    for (int j = 0; j < 7; ++j) {
        const double pair = fv[j] + fv[14 - j];
        result_kronrod += kGk15KronrodW[j] * pair;
        mean_abs += kGk15KronrodW[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
        if (j % 2 == 1)
            result_gauss += kGk15GaussW[j / 2] * pair;
    }

    const double mean = 0.5 * result_kronrod;
    double asc = kGk15KronrodW[7] * std::abs(fv[7] - mean);
    for (int j = 0; j < 7; ++j)
        asc += kGk15KronrodW[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
    asc *= half;
    mean_abs *= half;

    const double integral = result_kronrod * half;
    double err = std::abs((result_kronrod - result_gauss) * half);
    if (asc != 0.0 && err != 0.0)
        err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    const double round = 50.0 * std::numeric_limits<double>::epsilon() * mean_abs;
    err = std::max(err, round);
    return {integral, err};
}

struct Interval {
    double lo, hi, integral, error;
    bool operator<(const Interval& other) const { return error < other.error; }
};

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration on a finite interval.
// Throws ConvergenceError when the subdivision budget is exhausted before
// |error| <= max(abs_tol, rel_tol * |integral|).
template <class F>
double integrate(F&& f, double lo, double hi, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (!(lo < hi))
        return 0.0;

    std::priority_queue<detail::Interval> heap;
    auto first = detail::gk15(f, lo, hi);
    heap.push({lo, hi, first.integral, first.error});
    double total = first.integral;
    double total_err = first.error;

    for (int n = 0; n < spec.max_subdivisions; ++n) {
        if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total)))
            return total;
        if (heap.empty())
            return total;
        detail::Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) {
            // interval no longer splittable in double; accept its estimate
            total_err -= worst.error;
            continue;
        }
        auto left = detail::gk15(f, worst.lo, mid);
        auto right = detail::gk15(f, mid, worst.hi);
        total += left.integral + right.integral - worst.integral;
        total_err += left.error + right.error - worst.error;
        heap.push({worst.lo, mid, left.integral, left.error});
        heap.push({mid, worst.hi, right.integral, right.error});
    }
    if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total)))
        return total;
    throw ConvergenceError("adaptive quadrature: subdivision budget exhausted (error " +
                           std::to_string(total_err) + ", value " + std::to_string(total) + ")");
}

// Integral over [lo, inf) via the rational map x = lo + scale*u/(1-u).
// `scale` should be of the order of the integrand's decay length.
template <class F>
double integrate_semi_infinite(F&& f, double lo, double scale, const QuadratureSpec& spec = {}) {
    if (!(scale > 0.0))
        throw std::invalid_argument("integrate_semi_infinite: scale must be > 0");
    auto mapped = [&](double u) {
        const double w = 1.0 - u;
        if (w <= 0.0)
            return 0.0;  // deep subdivision can round u up to 1 exactly
        const double x = lo + scale * u / w;
        if (!std::isfinite(x))
            return 0.0;
        return f(x) * scale / (w * w);
    };
    return integrate(mapped, 0.0, 1.0, spec);
}

}  // namespace ecap

#endif
