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
#include <random>

#include "ecap/orderstats.hpp"
#include "oracle_quadrature.hpp"

using namespace ecap;

namespace {
double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}
}  // namespace

TEST_CASE("branch SNR density") {
    CHECK(snr_pdf(BranchSnrDist(1, 1.0), 0.0) == doctest::Approx(1.0));
    CHECK(snr_pdf(BranchSnrDist(2, 3.7), 0.0) == 0.0);
    CHECK_THROWS_AS(snr_pdf(BranchSnrDist(1, 1.0), -0.5), std::domain_error);

    const BranchSnrDist dist(3, 2.0);
    const double mass = static_cast<double>(oracle::integrate_to_inf(
        [&](long double x) { return snr_pdf(dist, static_cast<double>(x)); }, 0.0L, 6.0L,
        1e-14L));
    CHECK(rel_err(mass, 1.0) < 1e-10);
}

TEST_CASE("branch SNR distribution function") {
    CHECK(snr_cdf(BranchSnrDist(4, 2.0), 0.0) == 0.0);
    CHECK(rel_err(snr_cdf(BranchSnrDist(1, 1.0), 1.0), -std::expm1(-1.0)) < 1e-13);
    // incomplete-gamma route vs finite-sum route
    CHECK(rel_err(snr_cdf(BranchSnrDist(4, 3.0), 5.0),
                  snr_cdf_finite_sum(BranchSnrDist(4, 3.0), 5.0)) < 1e-12);
}

TEST_CASE("CDF finite-sum agreement over random parameters") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> uk(1, 6);
    std::uniform_real_distribution<double> ug(std::log(0.1), std::log(100.0));
    std::uniform_real_distribution<double> ux(0.0, 20.0);
    for (int i = 0; i < 500; ++i) {
        const BranchSnrDist dist(uk(rng), std::exp(ug(rng)));
        const double x = ux(rng) * dist.gamma0;
        const double a = snr_cdf(dist, x);
        const double b = snr_cdf_finite_sum(dist, x);
        CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("coefficient rows") {
    // row 0 is the scalar 1
    const CoefficientTable t0(BranchSnrDist(4, 7.0), 0);
    REQUIRE(t0.row(0).size() == 1);
    CHECK(t0.coeff(0, 0) == 1.0);

    // k=3, gamma0=1, m=1: [1, 1, 1/2]
    const CoefficientTable t1(BranchSnrDist(3, 1.0), 1);
    REQUIRE(t1.row(1).size() == 3);
    CHECK(t1.coeff(1, 0) == doctest::Approx(1.0));
    CHECK(t1.coeff(1, 1) == doctest::Approx(1.0));
    CHECK(t1.coeff(1, 2) == doctest::Approx(0.5));

    // k=2, gamma0=1, m=2: (1+x)^2 -> [1, 2, 1]
    const CoefficientTable t2(BranchSnrDist(2, 1.0), 2);
    REQUIRE(t2.row(2).size() == 3);
    CHECK(t2.coeff(2, 0) == doctest::Approx(1.0));
    CHECK(t2.coeff(2, 1) == doctest::Approx(2.0));
    CHECK(t2.coeff(2, 2) == doctest::Approx(1.0));

    // row m has exactly m(k-1)+1 entries
    const CoefficientTable t3(BranchSnrDist(5, 2.5), 4);
    for (int m = 0; m <= 4; ++m)
        CHECK(static_cast<int>(t3.row(m).size()) == m * 4 + 1);

    CHECK_THROWS_AS(t3.row(5), std::out_of_range);
    CHECK_THROWS_AS(CoefficientTable(BranchSnrDist(2, 1.0), -1), std::invalid_argument);
}

TEST_CASE("coefficient rows satisfy the power identity") {
    // sum_q c_q^(m) x^q = (sum_k x^k/(g0^k k!))^m at random probes
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ux(0.1, 4.0);
    for (int k : {1, 2, 3, 5})
        for (double g0 : {0.7, 1.0, 13.0}) {
            const CoefficientTable table(BranchSnrDist(k, g0), 5);
            for (int m = 0; m <= 5; ++m) {
                const double x = ux(rng);
                double base = 0.0, pw = 1.0;
                for (int j = 0; j < k; ++j) {
                    base += pw;
                    pw *= x / (g0 * (j + 1));
                }
                double lhs = 0.0, xq = 1.0;
                for (const double c : table.row(m)) {
                    lhs += c * xq;
                    xq *= x;
                }
                CHECK(rel_err(lhs, std::pow(base, m)) < 1e-9);
            }
        }
}

TEST_CASE("selected-SNR density, expanded vs direct") {
    // L = 1 is the branch density itself
    {
        const SelectionConfig sel(1, BranchSnrDist(3, 4.0));
        const CoefficientTable table(sel.branch, 0);
        for (int i = 0; i < 100; ++i) {
            const double x = 0.25 * i;
            CHECK(std::abs(max_order_pdf(sel, table, x) - snr_pdf(sel.branch, x)) <=
                  1e-12 * std::max(snr_pdf(sel.branch, x), 1e-30));
        }
    }

    // pointwise agreement with L F^{L-1} f
    {
        const SelectionConfig sel(4, BranchSnrDist(2, 5.0));
        const CoefficientTable table(sel.branch, 3);
        CHECK(rel_err(max_order_pdf(sel, table, 8.0), max_order_pdf_direct(sel, 8.0)) < 1e-10);
    }
    // pointwise over the meaningful support; in the far tail the expanded
    // alternating sum can only deliver absolute accuracy near machine noise
    // relative to the density's peak scale
    for (int k = 1; k <= 4; ++k)
        for (int L = 1; L <= 4; ++L) {
            const SelectionConfig sel(L, BranchSnrDist(k, 3.0));
            const CoefficientTable table(sel.branch, L - 1);
            for (double x : {0.05, 0.8, 3.0, 9.0, 30.0}) {
                const double expanded = max_order_pdf(sel, table, x);
                const double direct = max_order_pdf_direct(sel, x);
                const bool rel_ok = std::abs(expanded - direct) <=
                                    1e-9 * std::max(direct, 1e-300);
                // both tails cancel down to machine noise on the density's
                // unit scale
                const bool floor_ok = std::abs(expanded - direct) < 1e-15;
                CHECK((rel_ok || floor_ok));
            }
        }

    // normalization
    {
        const SelectionConfig sel(3, BranchSnrDist(3, 10.0));
        const CoefficientTable table(sel.branch, 2);
        const double mass = static_cast<double>(oracle::integrate_to_inf(
            [&](long double x) { return max_order_pdf(sel, table, static_cast<double>(x)); },
            0.0L, 50.0L, 1e-12L));
        CHECK(std::abs(mass - 1.0) < 1e-6);
    }

    // mismatched table is rejected
    {
        const SelectionConfig sel(3, BranchSnrDist(3, 10.0));
        const CoefficientTable wrong(sel.branch, 1);
        CHECK_THROWS_AS(max_order_pdf(sel, wrong, 1.0), std::invalid_argument);
    }
}

TEST_CASE("general order statistic density") {
    // l = L reduces to the maximum
    {
        const SelectionConfig sel(3, BranchSnrDist(2, 2.0));
        for (double x : {0.3, 1.0, 5.0})
            CHECK(rel_err(general_order_pdf(sel, 3, x), max_order_pdf_direct(sel, x)) < 1e-12);
    }
    // minimum of two unit-rate exponentials: rate doubles
    {
        const SelectionConfig sel(2, BranchSnrDist(1, 1.0));
        for (double x : {0.1, 0.5, 2.0})
            CHECK(rel_err(general_order_pdf(sel, 1, x), 2.0 * std::exp(-2.0 * x)) < 1e-12);
    }
    // middle order statistic integrates to one
    {
        const SelectionConfig sel(3, BranchSnrDist(2, 1.0));
        const double mass = static_cast<double>(oracle::integrate_to_inf(
            [&](long double x) { return general_order_pdf(sel, 2, static_cast<double>(x)); },
            0.0L, 3.0L, 1e-13L));
        CHECK(std::abs(mass - 1.0) < 1e-8);
    }
    // exchangeability: (1/L) sum_l f_(l) = f
    {
        const SelectionConfig sel(4, BranchSnrDist(3, 2.0));
        for (double x : {0.2, 1.0, 4.0, 12.0}) {
            double sum = 0.0;
            for (int l = 1; l <= 4; ++l)
                sum += general_order_pdf(sel, l, x);
            CHECK(rel_err(sum / 4.0, snr_pdf(sel.branch, x)) < 1e-10);
        }
    }
    const SelectionConfig sel(3, BranchSnrDist(2, 2.0));
    CHECK_THROWS_AS(general_order_pdf(sel, 0, 1.0), std::out_of_range);
    CHECK_THROWS_AS(general_order_pdf(sel, 4, 1.0), std::out_of_range);
}

TEST_CASE("expanded density tracks cancellation at the supported edge") {
    EvalDiagnostics diag;
    const SelectionConfig sel(8, BranchSnrDist(8, 50.0));
    const CoefficientTable table(sel.branch, 7);
    const double v = max_order_pdf(sel, table, 400.0, &diag);
    CHECK(std::isfinite(v));
    CHECK(std::isfinite(diag.cancellation_ratio));
}
