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

#include "ecap/tas.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ecap/specfun.hpp"

namespace ecap {

PowerPolicy::PowerPolicy(double cutoff_, double theta_tilde_) {
    if (!(cutoff_ > 0.0))
        throw std::invalid_argument("PowerPolicy: cutoff must be > 0");
    if (!(theta_tilde_ >= 0.0))
        throw std::invalid_argument("PowerPolicy: theta_tilde must be >= 0");
    cutoff = cutoff_;
    ln_cutoff = std::log(cutoff_);
    theta_tilde = theta_tilde_;
}

PowerPolicy PowerPolicy::from_ln(double ln_cutoff_, double theta_tilde_) {
    if (!std::isfinite(ln_cutoff_))
        throw std::invalid_argument("PowerPolicy: ln_cutoff must be finite");
    if (!(theta_tilde_ >= 0.0))
        throw std::invalid_argument("PowerPolicy: theta_tilde must be >= 0");
    PowerPolicy p;
    p.cutoff = std::exp(ln_cutoff_);
    p.ln_cutoff = ln_cutoff_;
    p.theta_tilde = theta_tilde_;
    return p;
}

double mu_coefficient(const PowerPolicy& policy, double snr) {
    if (!(snr >= 0.0))
        throw std::domain_error("mu_coefficient: snr must be >= 0");
    if (snr == 0.0 || snr < policy.cutoff)
        return 0.0;
    const double tt = policy.theta_tilde;
    const double v =
        std::exp(-(policy.ln_cutoff + tt * std::log(snr)) / (tt + 1.0)) - 1.0 / snr;
    return std::max(v, 0.0);
}

double simo_service_rate(const SystemConfig& cfg, const PowerPolicy& policy, double snr) {
    if (!(snr >= 0.0))
        throw std::domain_error("simo_service_rate: snr must be >= 0");
    return cfg.bt() * std::log1p(mu_coefficient(policy, snr) * snr) / std::numbers::ln2;
}

namespace {

constexpr double kEulerGamma = 0.577215664901532860606512090082;

// ln-argument wrappers: x0 = e^{ln_x0} can underflow to zero for strict-QoS
// cutoffs; each function then switches to the small-argument leading term.
double ln_lower_gamma_from_ln(double a, double ln_x0) {
    const double x0 = std::exp(ln_x0);
    if (x0 > 0.0)
        return specfun::ln_lower_inc_gamma(a, x0);
    return a * ln_x0 - std::log(a);  // gamma(a,x) -> x^a / a
}

double ln_upper_gamma_from_ln(double a, double ln_x0) {
    const double x0 = std::exp(ln_x0);
    if (x0 > 0.0)
        return specfun::ln_upper_inc_gamma(a, x0);
    return specfun::ln_gamma(a);
}

double ln_e1_from_ln(double ln_x0) {
    const double x0 = std::exp(ln_x0);
    if (x0 > 0.0)
        return specfun::ln_exp_integral_e1(x0);
    return std::log(-kEulerGamma - ln_x0);  // E1(x) -> -euler_gamma - ln x
}

// ln Gamma(a, x) extended to a = 0, where Gamma(0, x) = E1(x).
double ln_upper_gamma_or_e1_from_ln(double a, double ln_x0) {
    if (a == 0.0)
        return ln_e1_from_ln(ln_x0);
    return ln_upper_gamma_from_ln(a, ln_x0);
}

double mean_mu_impl(const SystemConfig& cfg, double ln_cutoff, double tt,
                    EvalDiagnostics* diag) {
    if (!std::isfinite(ln_cutoff))
        throw std::domain_error("mean_mu: cutoff must be positive and finite");
    const int K = cfg.mr;  // branch shape
    const int L = cfg.mt;  // selection candidates
    const double g0 = cfg.gamma0;
    const CoefficientTable table(BranchSnrDist(K, g0), L - 1);

    const double s = tt / (tt + 1.0);
    const double ln_lead = std::log(static_cast<double>(L)) - K * std::log(g0) -
                           specfun::ln_gamma(K);
    const double ln_inv_cutoff_pow = -ln_cutoff / (tt + 1.0);

    SignedLogSum acc;
    for (int m = 0; m < L; ++m) {
        const int sign = (m % 2 == 0) ? 1 : -1;
        const double ln_binom = std::log(binomial(L - 1, m));
        const double ln_b = std::log((m + 1) / g0);
        const double ln_x0 = ln_b + ln_cutoff;
        const auto row = table.row(m);
        for (int q = 0; q < static_cast<int>(row.size()); ++q) {
            const double c = row[static_cast<std::size_t>(q)];
            if (c == 0.0)
                continue;
            const double ln_c = std::log(c) + ln_lead + ln_binom;
            const double a1 = K + q - s;
            const double a2 = K + q - 1.0;
            acc.add(sign, ln_c + ln_inv_cutoff_pow - a1 * ln_b +
                              ln_upper_gamma_from_ln(a1, ln_x0));
            acc.add(-sign, ln_c - a2 * ln_b + ln_upper_gamma_or_e1_from_ln(a2, ln_x0));
        }
    }
    if (diag != nullptr)
        diag->record(acc.cancellation_ratio());
    return acc.value();
}

PowerPolicy solve_cutoff_impl(const SystemConfig& cfg, double tt) {
    // Solve in u = ln(cutoff): strict QoS pushes the cutoff itself far
    // below the double range.
    auto g = [&](double u) { return mean_mu_impl(cfg, u, tt, nullptr) - 1.0; };

    double lo = std::log(1e-12);
    double hi = 0.0;  // cutoff = 1
    double g_lo = g(lo);
    double g_hi = g(hi);
    // mean_mu decreases strictly in the cutoff; grow whichever end has the
    // wrong sign, geometrically in the cutoff.
    while (g_lo < 0.0) {
        hi = lo;
        g_hi = g_lo;
        lo = lo * 2.0 - 10.0;
        if (lo < -1e7) {
            std::ostringstream msg;
            msg << "solve_cutoff: mean power still below 1 at ln(cutoff) = " << lo
                << " (E{mu}-1 = " << g_lo << ")";
            throw SolveError(msg.str());
        }
        g_lo = g(lo);
    }
    while (g_hi > 0.0) {
        lo = hi;
        g_lo = g_hi;
        hi += std::numbers::ln2 * 2.0;  // cutoff *= 4
        if (hi > 40.0) {
            std::ostringstream msg;
            msg << "solve_cutoff: no sign change up to cutoff " << std::exp(hi)
                << "; last E{mu}-1 = " << g_hi;
            throw SolveError(msg.str());
        }
        g_hi = g(hi);
    }

    // Brent's method on u, stopped on the constraint residual itself.
    constexpr double kResidualTol = 1e-9;
    double a = lo, b = hi, fa = g_lo, fb = g_hi;
    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < 300; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        if (std::abs(fb) <= kResidualTol)
            return PowerPolicy::from_ln(b, tt);
        const double tol1 =
            2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 1e-300;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1)
            return PowerPolicy::from_ln(b, tt);
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q_, r = 0.0;
            const double s_ = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s_;
                q_ = 1.0 - s_;
            } else {
                q_ = fa / fc;
                r = fb / fc;
                p = s_ * (2.0 * xm * q_ * (q_ - r) - (b - a) * (r - 1.0));
                q_ = (q_ - 1.0) * (r - 1.0) * (s_ - 1.0);
            }
            if (p > 0.0)
                q_ = -q_;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q_ - std::abs(tol1 * q_), std::abs(e * q_))) {
                e = d;
                d = p / q_;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : std::copysign(tol1, xm);
        fb = g(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    throw SolveError("solve_cutoff: Brent iteration budget exhausted");
}

double ln_tas_expectation_impl(const SystemConfig& cfg, const PowerPolicy& policy,
                               EvalDiagnostics* diag, double* value_out) {
    const int K = cfg.mr;
    const int L = cfg.mt;
    const double g0 = cfg.gamma0;
    const double tt = policy.theta_tilde;
    const double ln_cutoff = policy.ln_cutoff;
    const CoefficientTable table(BranchSnrDist(K, g0), L - 1);

    const double s = tt / (tt + 1.0);
    const double ln_lead = std::log(static_cast<double>(L)) - K * std::log(g0) -
                           specfun::ln_gamma(K);
    const double ln_cutoff_pow = s * ln_cutoff;

    SignedLogSum acc;
    for (int m = 0; m < L; ++m) {
        const int sign = (m % 2 == 0) ? 1 : -1;
        const double ln_binom = std::log(binomial(L - 1, m));
        const double ln_b = std::log((m + 1) / g0);
        const double ln_x0 = ln_b + ln_cutoff;
        const auto row = table.row(m);
        for (int q = 0; q < static_cast<int>(row.size()); ++q) {
            const double c = row[static_cast<std::size_t>(q)];
            if (c == 0.0)
                continue;
            const double ln_c = std::log(c) + ln_lead + ln_binom;
            const double a0 = K + q;
            const double a1 = K + q - s;
            acc.add(sign, ln_c - a0 * ln_b + ln_lower_gamma_from_ln(a0, ln_x0));
            acc.add(sign, ln_c + ln_cutoff_pow - a1 * ln_b +
                              ln_upper_gamma_from_ln(a1, ln_x0));
        }
    }
    if (diag != nullptr)
        diag->record(acc.cancellation_ratio());
    if (value_out != nullptr)
        *value_out = acc.value();
    return acc.ln_abs_value();
}

}  // namespace

double mean_mu(const SystemConfig& cfg, double cutoff, EvalDiagnostics* diag) {
    if (!(cutoff > 0.0))
        throw std::domain_error("mean_mu: cutoff must be > 0");
    return mean_mu_impl(cfg, std::log(cutoff), cfg.theta_tilde(), diag);
}

double mean_mu(const SystemConfig& cfg, const PowerPolicy& policy, EvalDiagnostics* diag) {
    return mean_mu_impl(cfg, policy.ln_cutoff, policy.theta_tilde, diag);
}

double mean_mu_waterfilling(const SystemConfig& cfg, double cutoff, EvalDiagnostics* diag) {
    if (!(cutoff > 0.0))
        throw std::domain_error("mean_mu_waterfilling: cutoff must be > 0");
    return mean_mu_impl(cfg, std::log(cutoff), 0.0, diag);
}

PowerPolicy solve_cutoff(const SystemConfig& cfg) {
    return solve_cutoff_impl(cfg, cfg.theta_tilde());
}

PowerPolicy solve_cutoff_waterfilling(const SystemConfig& cfg) {
    return solve_cutoff_impl(cfg, 0.0);
}

double tas_expectation(const SystemConfig& cfg, const PowerPolicy& policy,
                       EvalDiagnostics* diag) {
    double value = 0.0;
    ln_tas_expectation_impl(cfg, policy, diag, &value);
    return value;
}

double ln_tas_expectation(const SystemConfig& cfg, const PowerPolicy& policy,
                          EvalDiagnostics* diag) {
    return ln_tas_expectation_impl(cfg, policy, diag, nullptr);
}

double tas_effective_capacity(const SystemConfig& cfg, const PowerPolicy& policy,
                              EvalDiagnostics* diag) {
    return -ln_tas_expectation(cfg, policy, diag) / cfg.theta;
}

double tas_effective_capacity(const SystemConfig& cfg, EvalDiagnostics* diag) {
    return tas_effective_capacity(cfg, solve_cutoff(cfg), diag);
}

double ln_constant_power_expectation(const SystemConfig& cfg, EvalDiagnostics* diag) {
    const int K = cfg.mr;
    const int L = cfg.mt;
    const double g0 = cfg.gamma0;
    const double tt = cfg.theta_tilde();
    const CoefficientTable table(BranchSnrDist(K, g0), L - 1);

    // int_0^inf (1+x)^{-tt} x^{a-1} e^{-(m+1)x/g0} dx
    //   = Gamma(a) psi(a, a - tt + 1; (m+1)/g0),  a = K + q
    const double ln_lead = std::log(static_cast<double>(L)) - K * std::log(g0) -
                           specfun::ln_gamma(K);
    SignedLogSum acc;
    for (int m = 0; m < L; ++m) {
        const int sign = (m % 2 == 0) ? 1 : -1;
        const double ln_binom = std::log(binomial(L - 1, m));
        const double z = (m + 1) / g0;
        const auto row = table.row(m);
        for (int q = 0; q < static_cast<int>(row.size()); ++q) {
            const double c = row[static_cast<std::size_t>(q)];
            if (c == 0.0)
                continue;
            const double a = K + q;
            acc.add(sign, ln_lead + ln_binom + std::log(c) + specfun::ln_gamma(a) +
                              specfun::ln_tricomi_u(a, a - tt + 1.0, z));
        }
    }
    if (diag != nullptr)
        diag->record(acc.cancellation_ratio());
    return acc.ln_abs_value();
}

double constant_power_expectation(const SystemConfig& cfg, EvalDiagnostics* diag) {
    return std::exp(ln_constant_power_expectation(cfg, diag));
}

double constant_power_effective_capacity(const SystemConfig& cfg, EvalDiagnostics* diag) {
    return -ln_constant_power_expectation(cfg, diag) / cfg.theta;
}

SystemConfig joint_selection_config(const SystemConfig& cfg) {
    return SystemConfig(cfg.mt * cfg.mr, 1, cfg.gamma0, cfg.theta, cfg.bandwidth_hz, cfg.frame_s);
}

}  // namespace ecap
