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

#include "ecap/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ecap/summation.hpp"

namespace ecap::specfun {

namespace {

constexpr int kMaxIter = 600;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kFpMin = std::numeric_limits<double>::min() / kEps;
constexpr double kEulerGamma = 0.577215664901532860606512090082;

// Series for P(a,x), valid for x < a+1. Returns the bare sum
// sum_{n>=0} x^n / (a (a+1) ... (a+n)); callers attach x^a e^{-x}.
double lower_series_sum(double a, double x) {
    double ap = a;
    double del = 1.0 / a;
    CompensatedSum sum;
    sum.add(del);
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum.add(del);
        if (std::abs(del) < std::abs(sum.value()) * kEps)
            return sum.value();
    }
    throw ConvergenceError("incomplete gamma series did not converge");
}

// Modified-Lentz continued fraction for Q(a,x), valid for x >= a+1.
// Returns h with Gamma(a,x) = e^{-x} x^a h.
double upper_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kFpMin)
            d = kFpMin;
        c = b + an / c;
        if (std::abs(c) < kFpMin)
            c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps)
            return h;
    }
    throw ConvergenceError("incomplete gamma continued fraction did not converge");
}

void check_inc_gamma_domain(double a, double x) {
    if (!(a > 0.0))
        throw std::domain_error("incomplete gamma: a must be > 0");
    if (!(x >= 0.0))
        throw std::domain_error("incomplete gamma: x must be >= 0");
}

// Modified-Lentz continued fraction for E1: returns h with E1(x) = e^{-x} h.
double e1_cf(double x) {
    double b = x + 1.0;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < kEps)
            return h;
    }
    throw ConvergenceError("E1 continued fraction did not converge");
}

// E1(x) = -euler_gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!), x <= 1.
double e1_series(double x) {
    CompensatedSum sum;
    double term = 1.0;
    for (int k = 1; k <= kMaxIter; ++k) {
        term *= -x / k;
        const double contrib = -term / k;
        sum.add(contrib);
        if (std::abs(contrib) < kEps * std::abs(sum.value()))
            break;
    }
    return -kEulerGamma - std::log(x) + sum.value();
}

}  // namespace

double ln_gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("ln_gamma: x must be > 0");
    return std::lgamma(x);
}

double gamma_fn(double x) {
    if (!(x > 0.0))
        throw std::domain_error("gamma_fn: x must be > 0");
    return std::tgamma(x);
}

double reg_lower_gamma(double a, double x) {
    check_inc_gamma_domain(a, x);
    if (x == 0.0)
        return 0.0;
    if (x < a + 1.0) {
        const double sum = lower_series_sum(a, x);
        return sum * std::exp(a * std::log(x) - x - ln_gamma(a));
    }
    return 1.0 - reg_upper_gamma(a, x);
}

double reg_upper_gamma(double a, double x) {
    check_inc_gamma_domain(a, x);
    if (x == 0.0)
        return 1.0;
    if (x < a + 1.0)
        return 1.0 - reg_lower_gamma(a, x);
    const double h = upper_cf(a, x);
    return h * std::exp(a * std::log(x) - x - ln_gamma(a));
}

double lower_inc_gamma(double a, double x) {
    return reg_lower_gamma(a, x) * gamma_fn(a);
}

double upper_inc_gamma(double a, double x) {
    return reg_upper_gamma(a, x) * gamma_fn(a);
}

double ln_lower_inc_gamma(double a, double x) {
    check_inc_gamma_domain(a, x);
    if (!(x > 0.0))
        throw std::domain_error("ln_lower_inc_gamma: x must be > 0");
    if (x < a + 1.0)
        return a * std::log(x) - x + std::log(lower_series_sum(a, x));
    return ln_gamma(a) + std::log1p(-reg_upper_gamma(a, x));
}

double ln_upper_inc_gamma(double a, double x) {
    check_inc_gamma_domain(a, x);
    if (x == 0.0)
        return ln_gamma(a);
    if (x >= a + 1.0)
        return a * std::log(x) - x + std::log(upper_cf(a, x));
    return ln_gamma(a) + std::log1p(-reg_lower_gamma(a, x));
}

double exp_integral_e1(double x) {
    if (!(x > 0.0))
        throw std::domain_error("exp_integral_e1: x must be > 0");
    if (x <= 1.0)
        return e1_series(x);
    return e1_cf(x) * std::exp(-x);
}

double ln_exp_integral_e1(double x) {
    if (!(x > 0.0))
        throw std::domain_error("ln_exp_integral_e1: x must be > 0");
    if (x <= 1.0)
        return std::log(e1_series(x));
    return std::log(e1_cf(x)) - x;
}

double exp_scaled_e1(double x) {
    if (!(x > 0.0))
        throw std::domain_error("exp_scaled_e1: x must be > 0");
    if (x <= 1.0)
        return std::exp(x) * e1_series(x);
    return e1_cf(x);
}

double exp_integral_ei(double x) {
    if (!(x < 0.0))
        throw std::domain_error("exp_integral_ei: defined for x < 0 only");
    return -exp_integral_e1(-x);
}

namespace {

// ln of the integrand of I = int_0^inf e^{-s} s^{a-1} (1 + s/z)^p ds,
// which is psi(a,b;z) * z^a * Gamma(a) after the substitution s = z t.
struct TricomiIntegrand {
    double a, p, z;

    double ln_value(double s) const {
        if (s <= 0.0)
            return (a == 1.0) ? p * 0.0 : ((a > 1.0) ? -std::numeric_limits<double>::infinity()
                                                     : std::numeric_limits<double>::infinity());
        return -s + (a - 1.0) * std::log(s) + p * std::log1p(s / z);
    }
};

}  // namespace

double ln_tricomi_u(double a, double b, double z, const QuadratureSpec& spec) {
    if (!(a > 0.0))
        throw std::domain_error("tricomi_u: a must be > 0");
    if (!(z > 0.0))
        throw std::domain_error("tricomi_u: z must be > 0");
    spec.validate();

    const double p = b - a - 1.0;
    const TricomiIntegrand g{a, p, z};

    // Stationary point of -s + (a-1) ln s + p ln(1+s/z): the positive root
    // of s^2 + (z - (a-1) - p) s - (a-1) z = 0. For strongly negative p the
    // peak sits near (a-1) z / |p|, far from the naive s = a-1.
    double s_peak = 1e-8;
    if (a >= 1.0) {
        const double B = z - (a - 1.0) - p;
        const double disc = B * B + 4.0 * (a - 1.0) * z;
        s_peak = std::max(0.5 * (-B + std::sqrt(disc)), 1e-12);
    }
    double ln_peak = g.ln_value(s_peak);
    for (const double probe : {0.25 * s_peak, 4.0 * s_peak, std::max(a - 1.0, 1e-8)})
        ln_peak = std::max(ln_peak, g.ln_value(probe));

    // Upper cutoff: past s_decay the ln-integrand falls at rate >= 1/2, so
    // the tail beyond S is bounded by 2 * integrand(S). Grow S until the
    // integrand there is negligible against the peak.
    const double s_decay = std::max({2.0 * (a - 1.0), 2.0 * p - z, 8.0});
    double s_hi = std::max({s_decay, 1.5 * s_peak, s_peak + 8.0});
    const double ln_floor = std::min(std::log(std::max(spec.abs_tol, 1e-300)),
                                     ln_peak + std::log(spec.rel_tol) - 16.0);
    while (g.ln_value(s_hi) > ln_floor && s_hi < 1e8)
        s_hi *= 1.5;

    // Scale by the peak so the adaptive pass works near unit magnitude.
    double scale = ln_peak;

    double integral;
    if (a >= 1.0) {
        auto f = [&](double s) { return std::exp(g.ln_value(s) - scale); };
        integral = integrate(f, 0.0, s_hi, spec);
    } else {
        // t = u^{1/a} removes the s -> 0 endpoint singularity:
        // I = (1/a) int_0^{S^a} e^{-u^{1/a}} (1 + u^{1/a}/z)^p du.
        auto f = [&](double u) {
            const double s = std::pow(u, 1.0 / a);
            return std::exp(-s + p * std::log1p(s / z) - std::log(a) - scale);
        };
        // rescale: the u-space integrand peaks at its own magnitude
        scale = -std::log(a);
        const double u_hi = std::pow(s_hi, a);
        double probe_max = -std::numeric_limits<double>::infinity();
        for (int i = 1; i <= 32; ++i) {
            const double u = u_hi * i / 32.0;
            const double s = std::pow(u, 1.0 / a);
            probe_max = std::max(probe_max, -s + p * std::log1p(s / z) - std::log(a));
        }
        scale = std::max(scale, probe_max);
        integral = integrate(f, 0.0, u_hi, spec);
    }

    if (!(integral > 0.0))
        throw ConvergenceError("tricomi_u: quadrature returned a non-positive integral");
    return scale + std::log(integral) - a * std::log(z) - ln_gamma(a);
}

double tricomi_u(double a, double b, double z, const QuadratureSpec& spec) {
    return std::exp(ln_tricomi_u(a, b, z, spec));
}

}  // namespace ecap::specfun
