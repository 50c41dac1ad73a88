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

#include <doctest.h>

#include <cmath>

#include "ecap/montecarlo.hpp"
#include "ecap/tas.hpp"
#include "oracle_quadrature.hpp"

using namespace ecap;

namespace {

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// quadrature version of E{mu}: int_cutoff^inf mu(x) f_(L)(x) dx with the
// upper truncation at gamma0 (K + 40 sqrt(K))
double mean_mu_quadrature(const SystemConfig& cfg, const PowerPolicy& policy) {
    const SelectionConfig sel(cfg.mt, BranchSnrDist(cfg.mr, cfg.gamma0));
    const double upper =
        cfg.gamma0 * (cfg.mr + 40.0 * std::sqrt(static_cast<double>(cfg.mr)));
    return static_cast<double>(oracle::integrate(
        [&](long double x) -> long double {
            const double xd = static_cast<double>(x);
            return mu_coefficient(policy, xd) * max_order_pdf_direct(sel, xd);
        },
        static_cast<long double>(policy.cutoff), static_cast<long double>(upper), 1e-13L));
}

}  // namespace

TEST_CASE("power coefficient") {
    const PowerPolicy policy(1.0, 1.0);
    // below the cutoff nothing is transmitted
    CHECK(mu_coefficient(policy, 0.5) == 0.0);
    CHECK(mu_coefficient(PowerPolicy(2.0, 0.7), 1.0) == 0.0);
    // cutoff=1, tt=1, snr=4: 1^(1/2) (1/4)^(1/2) - 1/4 = 1/4
    CHECK(mu_coefficient(policy, 4.0) == doctest::Approx(0.25).epsilon(1e-14));
    // tt -> 0 recovers water-filling
    const PowerPolicy wf(0.8, 0.0);
    for (double x : {0.9, 2.0, 50.0})
        CHECK(mu_coefficient(wf, x) == doctest::Approx(1.0 / 0.8 - 1.0 / x).epsilon(1e-14));
    // continuity at the cutoff
    const PowerPolicy p2(1.7, 3.3);
    for (double eps : {1e-3, 1e-6, 1e-9})
        CHECK(mu_coefficient(p2, 1.7 * (1.0 + eps)) < 2.0 * eps);
    CHECK(mu_coefficient(p2, 1.7) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(mu_coefficient(policy, -1.0), std::domain_error);
    CHECK_THROWS_AS(PowerPolicy(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(PowerPolicy(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("simo service rate") {
    const SystemConfig cfg(2, 2, 10.0, 0.01);
    const PowerPolicy policy(1.3, 2.0);
    CHECK(simo_service_rate(cfg, policy, 0.5) == 0.0);
    CHECK(simo_service_rate(cfg, policy, 1.3) == doctest::Approx(0.0).epsilon(1e-10));
    // water-filling at snr = 2 cutoff: mu*snr = 1, one extra bit
    const PowerPolicy wf(0.9, 0.0);
    CHECK(simo_service_rate(cfg, wf, 1.8) == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("mean power closed form against quadrature") {
    for (double theta : {0.01, 0.1})
        for (double gamma0 : {2.0, 10.0}) {
            const SystemConfig cfg(2, 3, gamma0, theta);
            const PowerPolicy trial(0.4, cfg.theta_tilde());
            CHECK(rel_err(mean_mu(cfg, 0.4), mean_mu_quadrature(cfg, trial)) < 1e-8);
        }
    // the a = 0 upper-gamma degeneracy (mr = 1, q = 0) goes through E1
    const SystemConfig mr1(3, 1, 5.0, 0.05);
    const PowerPolicy trial(0.7, mr1.theta_tilde());
    CHECK(rel_err(mean_mu(mr1, 0.7), mean_mu_quadrature(mr1, trial)) < 1e-8);
}

TEST_CASE("mean power vanishes as the cutoff grows") {
    const SystemConfig cfg(2, 2, 10.0, 0.1);
    CHECK(mean_mu(cfg, 1e9) < 1e-6);
    double prev = mean_mu(cfg, 1e-3);
    for (double cutoff : {1e-2, 0.1, 1.0, 5.0, 20.0}) {
        const double cur = mean_mu(cfg, cutoff);
        CHECK(cur < prev);  // strictly decreasing
        prev = cur;
    }
    CHECK_THROWS_AS(mean_mu(cfg, 0.0), std::domain_error);
}

TEST_CASE("cutoff solve meets the constraint residual") {
    for (int mt : {1, 2, 3})
        for (int mr : {1, 2, 3})
            for (double theta : {0.01, 0.1}) {
                const SystemConfig cfg(mt, mr, 10.0, theta);
                const PowerPolicy policy = solve_cutoff(cfg);
                CHECK(std::abs(mean_mu(cfg, policy) - 1.0) <= 1e-9);
            }
    // water-filling variant
    const SystemConfig cfg(2, 2, 10.0, 0.1);
    const PowerPolicy wf = solve_cutoff_waterfilling(cfg);
    CHECK(wf.theta_tilde == 0.0);
    CHECK(std::abs(mean_mu_waterfilling(cfg, wf.cutoff) - 1.0) <= 1e-9);
}

TEST_CASE("cutoff solve agrees with a quadrature-based root solve") {
    const SystemConfig cfg(2, 3, 10.0, 0.01);
    const PowerPolicy policy = solve_cutoff(cfg);
    // independent root solve: bisection on the quadrature E{mu}
    double lo = 1e-6, hi = 10.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mean_mu_quadrature(cfg, PowerPolicy(mid, cfg.theta_tilde())) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    CHECK(rel_err(policy.cutoff, 0.5 * (lo + hi)) < 1e-6);
}

TEST_CASE("cutoff tends to one for loose QoS at high SNR") {
    const SystemConfig cfg(1, 2, 1e4, 1e-8);
    const PowerPolicy policy = solve_cutoff(cfg);
    CHECK(std::abs(policy.cutoff - 1.0) < 0.02);
}

TEST_CASE("strict QoS drives the cutoff below the double range") {
    const SystemConfig cfg(2, 2, 10.0, 10.0);
    const PowerPolicy policy = solve_cutoff(cfg);
    CHECK(policy.ln_cutoff < -700.0);
    CHECK(std::abs(mean_mu(cfg, policy) - 1.0) <= 1e-9);
    // expectation underflows but its ln form stays usable
    CHECK(tas_expectation(cfg, policy) == 0.0);
    CHECK(std::isfinite(ln_tas_expectation(cfg, policy)));
    CHECK(tas_effective_capacity(cfg, policy) > 0.0);
}

TEST_CASE("selection expectation against quadrature and Monte Carlo") {
    const SystemConfig cfg(2, 2, 10.0, 0.1);
    const PowerPolicy policy = solve_cutoff(cfg);
    const double tt = cfg.theta_tilde();
    const double s = tt / (tt + 1.0);
    const SelectionConfig sel(2, BranchSnrDist(2, 10.0));

    // strict QoS pushes the cutoff (and the expectation) many orders below
    // one; integrate the healthy-scale moment int x^-s f and attach the
    // cutoff^s factor in ln space
    const double below = static_cast<double>(oracle::integrate(
        [&](long double x) -> long double {
            return max_order_pdf_direct(sel, static_cast<double>(x));
        },
        0.0L, static_cast<long double>(policy.cutoff), 1e-14L));
    const double moment = static_cast<double>(oracle::integrate_to_inf(
        [&](long double x) -> long double {
            const double xd = static_cast<double>(x);
            return std::pow(xd, -s) * max_order_pdf_direct(sel, xd);
        },
        static_cast<long double>(policy.cutoff), 10.0L, 1e-16L));
    const double above = std::exp(s * policy.ln_cutoff + std::log(moment));
    CHECK(rel_err(tas_expectation(cfg, policy), below + above) < 1e-8);

    // theta -> 0+
    const SystemConfig loose(2, 2, 10.0, 1e-12);
    CHECK(std::abs(tas_expectation(loose, solve_cutoff(loose)) - 1.0) < 1e-6);

    // Monte Carlo mean of (1 + mu x)^{-tt}
    const mc::RngStream stream{99, mc::kSaltChannel};
    double sum = 0.0;
    const std::uint64_t n = 400'000;
    for (std::uint64_t t = 0; t < n; ++t) {
        const double x = mc::sample_selected_snr(cfg, mc::Scheme::tas, stream, t);
        sum += std::pow(1.0 + mu_coefficient(policy, x) * x, -tt);
    }
    CHECK(rel_err(tas_expectation(cfg, policy), sum / static_cast<double>(n)) < 0.01);
}

TEST_CASE("optimal power beats constant power everywhere") {
    for (double db : {0.0, 10.0, 20.0})
        for (double theta : {0.01, 0.1, 1.0}) {
            const SystemConfig cfg(2, 2, db_to_linear(db), theta);
            CHECK(tas_effective_capacity(cfg) >=
                  constant_power_effective_capacity(cfg) - 1e-9);
        }
}

TEST_CASE("constant power expectation against quadrature and Monte Carlo") {
    // 1x1 reduces to a plain exponential integral
    const SystemConfig siso(1, 1, 10.0, 0.1);
    const double tt = siso.theta_tilde();
    const double want = static_cast<double>(oracle::integrate_to_inf(
        [&](long double x) {
            return std::pow(1.0L + x, static_cast<long double>(-tt)) * std::exp(-x / 10.0L) /
                   10.0L;
        },
        0.0L, 10.0L, 1e-15L));
    CHECK(rel_err(constant_power_expectation(siso), want) < 1e-9);

    // theta = 0.01 keeps the sample estimator bulk-dominated (larger theta
    // pushes the expectation into deep fades no finite sample can reach)
    const SystemConfig cfg(3, 2, 10.0, 0.01);
    const mc::RngStream stream{7, mc::kSaltChannel};
    double sum = 0.0;
    const std::uint64_t n = 400'000;
    for (std::uint64_t t = 0; t < n; ++t) {
        const double x = mc::sample_selected_snr(cfg, mc::Scheme::tas, stream, t);
        sum += std::pow(1.0 + x, -cfg.theta_tilde());
    }
    CHECK(rel_err(constant_power_expectation(cfg), sum / static_cast<double>(n)) < 0.01);
}

TEST_CASE("optimal and constant power converge for loose QoS at high SNR") {
    const SystemConfig cfg(2, 2, 1e3, 1e-6);
    const double opt = tas_effective_capacity(cfg);
    const double cst = constant_power_effective_capacity(cfg);
    CHECK(rel_err(opt, cst) < 0.01);
}

TEST_CASE("joint selection configuration") {
    const SystemConfig a(3, 3, 10.0, 0.1);
    const SystemConfig ja = joint_selection_config(a);
    CHECK(ja.mt == 9);
    CHECK(ja.mr == 1);
    CHECK(ja.gamma0 == a.gamma0);
    const SystemConfig b(1, 1, 2.0, 0.1);
    CHECK(joint_selection_config(b).mt == 1);
    CHECK(joint_selection_config(b).mr == 1);
    const SystemConfig c(2, 4, 2.0, 0.1);
    CHECK(joint_selection_config(c).mt == 8);
    CHECK(joint_selection_config(c).mr == 1);
}

TEST_CASE("joint selection sits between no-selection and full receive diversity") {
    const double db = 10.0;
    const double theta = 0.01;
    const SystemConfig mimo(3, 3, db_to_linear(db), theta);
    const double ec_joint = tas_effective_capacity(joint_selection_config(mimo));
    const double ec_simo = tas_effective_capacity(SystemConfig(1, 3, mimo.gamma0, theta));
    const double ec_tas = tas_effective_capacity(mimo);
    CHECK(ec_joint > ec_simo);
    CHECK(ec_joint < ec_tas);
}
