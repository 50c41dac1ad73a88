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

#include "ecap/asymptotics.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

#include "ecap/orderstats.hpp"
#include "ecap/quadrature.hpp"
#include "ecap/specfun.hpp"

namespace ecap {

double waterfilling_mu(double cutoff, double snr) {
    if (!(cutoff > 0.0))
        throw std::domain_error("waterfilling_mu: cutoff must be > 0");
    if (!(snr >= 0.0))
        throw std::domain_error("waterfilling_mu: snr must be >= 0");
    if (snr <= cutoff)
        return 0.0;
    return 1.0 / cutoff - 1.0 / snr;
}

ErgodicTerms ergodic_terms(const SystemConfig& cfg, double cutoff, int m, int q,
                           EvalDiagnostics* diag) {
    if (!(cutoff > 0.0))
        throw std::domain_error("ergodic_terms: cutoff must be > 0");
    ErgodicTerms terms;
    terms.g0 = cfg.gamma0 / ((m + 1) * cutoff);
    const double g0 = terms.g0;
    const double c = 1.0 / g0;
    const double scaled_ei = -specfun::exp_scaled_e1(c);  // e^{1/g0} Ei(-1/g0)

    const int r_max = q + cfg.mr - 1;
    terms.i4r.resize(static_cast<std::size_t>(r_max) + 1);
    terms.i3r.resize(static_cast<std::size_t>(r_max) + 1);

    // i4r[r] = int_0^inf ln(1+g0 z) z^r e^{-z} dz as a finite double sum
    // over descending factorials, alternating in sign.
    for (int r = 0; r <= r_max; ++r) {
        CompensatedSum sum;
        double falling = 1.0;  // r!/(r-xi)!
        for (int xi = 0; xi <= r; ++xi) {
            const int n = r - xi;
            const double sign_ei = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^{n-1}
            sum.add(falling * sign_ei * std::pow(g0, -n) * scaled_ei);
            double fact = 1.0;  // (nu-1)!
            for (int nu = 1; nu <= n; ++nu) {
                const double sign_nu = ((n - nu) % 2 == 0) ? 1.0 : -1.0;
                sum.add(falling * sign_nu * fact * std::pow(g0, -(n - nu)));
                fact *= nu;
            }
            falling *= (r - xi);
        }
        terms.i4r[static_cast<std::size_t>(r)] = sum.value();
        terms.i3r[static_cast<std::size_t>(r)] = std::pow(g0, r + 1) * sum.value();
        if (diag != nullptr)
            diag->record(sum.cancellation_ratio());
    }

    CompensatedSum i2;
    for (int r = 0; r <= r_max; ++r)
        i2.add(binomial(r_max, r) * terms.i3r[static_cast<std::size_t>(r)]);
    terms.i2q = i2.value();
    terms.i1q = std::pow(cutoff, q + cfg.mr) * std::exp(-(m + 1) * cutoff / cfg.gamma0) *
                terms.i2q;
    return terms;
}

double ergodic_capacity(const SystemConfig& cfg, const PowerPolicy& wf_policy,
                        EvalDiagnostics* diag) {
    const int K = cfg.mr;
    const int L = cfg.mt;
    const double g0 = cfg.gamma0;
    const CoefficientTable table(BranchSnrDist(K, g0), L - 1);

    const double lead = cfg.bt() / std::numbers::ln2 * L /
                        (std::pow(g0, K) * specfun::gamma_fn(K));
    CompensatedSum outer;
    for (int m = 0; m < L; ++m) {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        const double binom = binomial(L - 1, m);
        const auto row = table.row(m);
        for (int q = 0; q < static_cast<int>(row.size()); ++q) {
            const double c = row[static_cast<std::size_t>(q)];
            if (c == 0.0)
                continue;
            const ErgodicTerms terms = ergodic_terms(cfg, wf_policy.cutoff, m, q, diag);
            outer.add(sign * binom * c * terms.i1q);
        }
    }
    if (diag != nullptr)
        diag->record(outer.cancellation_ratio());
    return lead * outer.value();
}

double ergodic_capacity(const SystemConfig& cfg, EvalDiagnostics* diag) {
    return ergodic_capacity(cfg, solve_cutoff_waterfilling(cfg), diag);
}

double alpha_constant(const SystemConfig& cfg, EvalDiagnostics* diag) {
    const int K = cfg.mr;
    const int L = cfg.mt;
    const double g0 = cfg.gamma0;

    if (K == 1 && L == 1)
        return 0.0;  // E{1/snr} diverges for a single exponential branch

    if (K >= 2) {
        const CoefficientTable table(BranchSnrDist(K, g0), L - 1);
        const double ln_lead = std::log(static_cast<double>(L)) - K * std::log(g0) -
                               specfun::ln_gamma(K);
        SignedLogSum acc;
        for (int m = 0; m < L; ++m) {
            const int sign = (m % 2 == 0) ? 1 : -1;
            const double ln_binom = std::log(binomial(L - 1, m));
            const double ln_scale = std::log(g0 / (m + 1));
            const auto row = table.row(m);
            for (int q = 0; q < static_cast<int>(row.size()); ++q) {
                const double c = row[static_cast<std::size_t>(q)];
                if (c == 0.0)
                    continue;
                const double a = K + q - 1.0;
                acc.add(sign, ln_lead + ln_binom + std::log(c) + a * ln_scale +
                                  specfun::ln_gamma(a));
            }
        }
        if (diag != nullptr)
            diag->record(acc.cancellation_ratio());
        return 1.0 / acc.value();
    }

    // mr = 1, mt >= 2: the m = 0, q = 0 expansion term carries Gamma(0),
    // but E{1/snr} itself is finite; integrate it directly.
    const SelectionConfig sel(L, BranchSnrDist(K, g0));
    auto f = [&](double x) { return x > 0.0 ? max_order_pdf_direct(sel, x) / x : 0.0; };
    const double harmonic_moment =
        integrate_semi_infinite(f, 0.0, g0, QuadratureSpec{1e-11, 1e-300, 4000});
    return 1.0 / harmonic_moment;
}

double ec_infinity(const SystemConfig& cfg, EvalDiagnostics* diag) {
    const double alpha = alpha_constant(cfg, diag);
    return cfg.bt() * std::log1p(alpha) / std::numbers::ln2;
}

namespace {

// Pascal-triangle binomials, exact in 64-bit for the ranges used here.
std::uint64_t binom_u64(int n, int r) {
    if (r < 0 || r > n)
        return 0;
    std::vector<std::uint64_t> row(static_cast<std::size_t>(n) + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j >= 1; --j)
            row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j - 1)];
    return row[static_cast<std::size_t>(r)];
}

std::uint64_t factorial_u64(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i)
        f *= static_cast<std::uint64_t>(i);
    return f;
}

std::uint64_t pow_u64(std::uint64_t base, int e) {
    std::uint64_t v = 1;
    for (int i = 0; i < e; ++i)
        v *= base;
    return v;
}

}  // namespace

IdentityReport identity_suite() {
    IdentityReport report{true, true, true};

    // sum_q C(m,q) (q+1)! (m+1)^{m-q} = (m+1)^{m+1}, m = 0..10
    for (int m = 0; m <= 10; ++m) {
        std::uint64_t sum = 0;
        for (int q = 0; q <= m; ++q)
            sum += binom_u64(m, q) * factorial_u64(q + 1) *
                   pow_u64(static_cast<std::uint64_t>(m) + 1, m - q);
        if (sum != pow_u64(static_cast<std::uint64_t>(m) + 1, m + 1))
            report.weighted_binomial_sum_ok = false;
    }

    // sum_i C(I+i,i) 2^{I-i} = 4^I, I = 0..15
    for (int I = 0; I <= 15; ++I) {
        std::uint64_t sum = 0;
        for (int i = 0; i <= I; ++i)
            sum += binom_u64(I + i, i) * pow_u64(2, I - i);
        if (sum != pow_u64(4, I))
            report.central_binomial_sum_ok = false;
    }

    // sum_m (-1)^m C(n-1,m)/(m+1) = 1/n, n = 1..10, over the common
    // denominator lcm(1..10) = 2520
    constexpr std::int64_t kLcm = 2520;
    for (int n = 1; n <= 10; ++n) {
        std::int64_t sum = 0;
        for (int m = 0; m < n; ++m) {
            const std::int64_t term =
                static_cast<std::int64_t>(binom_u64(n - 1, m)) * (kLcm / (m + 1));
            sum += (m % 2 == 0) ? term : -term;
        }
        if (sum != kLcm / n)
            report.alternating_collapse_ok = false;
    }

    return report;
}

bool weighted_binomial_partial_sum_matches(int m, int p) {
    if (p < 2 || p > m + 1)
        throw std::invalid_argument(
            "weighted_binomial_partial_sum_matches: requires 2 <= p <= m+1");
    using i128 = __int128;
    i128 lhs = 0;
    for (int q = m - p + 1; q <= m; ++q)
        lhs += static_cast<i128>(binom_u64(m, q)) * factorial_u64(q + 1) *
               pow_u64(static_cast<std::uint64_t>(m) + 1, m - q);
    lhs *= factorial_u64(p - 1);

    i128 rhs = factorial_u64(m - p + 2);
    for (int j = m - p + 3; j <= m; ++j)
        rhs *= j;
    rhs *= pow_u64(static_cast<std::uint64_t>(m) + 1, p);
    return lhs == rhs;
}

CutoffConvergence cutoff_unity_check(int mt, int mr, double theta,
                                     std::span<const double> gamma0_db_grid,
                                     double bandwidth_hz, double frame_s) {
    CutoffConvergence result;
    result.mt = mt;
    result.mr = mr;
    result.theta = theta;
    result.monotone_decreasing = true;

    for (const double db : gamma0_db_grid) {
        const SystemConfig cfg(mt, mr, db_to_linear(db), theta, bandwidth_hz, frame_s);
        const PowerPolicy policy = solve_cutoff(cfg);
        const double dev = std::abs(policy.cutoff - 1.0);
        if (!result.deviation.empty() &&
            dev > result.deviation.back() * (1.0 + 1e-9) + 1e-12)
            result.monotone_decreasing = false;
        result.gamma0_db.push_back(db);
        result.cutoff.push_back(policy.cutoff);
        result.deviation.push_back(dev);
    }
    result.final_deviation = result.deviation.empty() ? 0.0 : result.deviation.back();
    return result;
}

}  // namespace ecap
