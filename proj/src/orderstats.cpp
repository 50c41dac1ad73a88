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

#include "ecap/orderstats.hpp"

#include <cmath>
#include <stdexcept>

#include "ecap/specfun.hpp"

namespace ecap {

BranchSnrDist::BranchSnrDist(int k_, double gamma0_) : k(k_), gamma0(gamma0_) {
    if (k < 1)
        throw std::invalid_argument("BranchSnrDist: k must be >= 1");
    if (!(gamma0 > 0.0))
        throw std::invalid_argument("BranchSnrDist: gamma0 must be > 0");
}

SelectionConfig::SelectionConfig(int num_candidates_, BranchSnrDist branch_)
    : num_candidates(num_candidates_), branch(branch_) {
    if (num_candidates < 1)
        throw std::invalid_argument("SelectionConfig: num_candidates must be >= 1");
}

double binomial(int n, int r) {
    if (r < 0 || r > n)
        return 0.0;
    r = std::min(r, n - r);
    double c = 1.0;
    for (int i = 1; i <= r; ++i)
        c = c * (n - r + i) / i;
    return c;
}

double snr_pdf(const BranchSnrDist& dist, double x) {
    if (!(x >= 0.0))
        throw std::domain_error("snr_pdf: x must be >= 0");
    if (x == 0.0)
        return dist.k == 1 ? 1.0 / dist.gamma0 : 0.0;
    const double ln = (dist.k - 1) * std::log(x) - x / dist.gamma0 -
                      dist.k * std::log(dist.gamma0) - specfun::ln_gamma(dist.k);
    return std::exp(ln);
}

double snr_cdf(const BranchSnrDist& dist, double x) {
    if (!(x >= 0.0))
        throw std::domain_error("snr_cdf: x must be >= 0");
    return specfun::reg_lower_gamma(dist.k, x / dist.gamma0);
}

double snr_cdf_finite_sum(const BranchSnrDist& dist, double x) {
    if (!(x >= 0.0))
        throw std::domain_error("snr_cdf_finite_sum: x must be >= 0");
    const double y = x / dist.gamma0;
    double term = 1.0;
    CompensatedSum sum;
    sum.add(term);
    for (int j = 1; j < dist.k; ++j) {
        term *= y / j;
        sum.add(term);
    }
    // -expm1 keeps precision when the CDF is tiny
    const double ln_tail = -y + std::log(sum.value());
    return -std::expm1(ln_tail);
}

CoefficientTable::CoefficientTable(const BranchSnrDist& dist, int m_max)
    : k_(dist.k), gamma0_(dist.gamma0) {
    if (m_max < 0)
        throw std::invalid_argument("CoefficientTable: m_max must be >= 0");
    rows_.reserve(static_cast<std::size_t>(m_max) + 1);
    rows_.push_back({1.0});
    if (m_max == 0)
        return;

    std::vector<double> base(static_cast<std::size_t>(k_));
    base[0] = 1.0;
    for (int j = 1; j < k_; ++j)
        base[static_cast<std::size_t>(j)] = base[static_cast<std::size_t>(j - 1)] / (gamma0_ * j);

    for (int m = 1; m <= m_max; ++m) {
        const auto& prev = rows_.back();
        std::vector<double> next(prev.size() + base.size() - 1, 0.0);
        for (std::size_t i = 0; i < prev.size(); ++i)
            for (std::size_t j = 0; j < base.size(); ++j)
                next[i + j] += prev[i] * base[j];
        rows_.push_back(std::move(next));
    }
}

std::span<const double> CoefficientTable::row(int m) const {
    if (m < 0 || m > m_max())
        throw std::out_of_range("CoefficientTable: row index out of range");
    return rows_[static_cast<std::size_t>(m)];
}

CoefficientTable build_coefficients(const BranchSnrDist& dist, int m_max) {
    return CoefficientTable(dist, m_max);
}

double max_order_pdf(const SelectionConfig& sel, const CoefficientTable& table, double x,
                     EvalDiagnostics* diag) {
    if (!(x >= 0.0))
        throw std::domain_error("max_order_pdf: x must be >= 0");
    const int L = sel.num_candidates;
    const int k = sel.branch.k;
    const double g0 = sel.branch.gamma0;
    if (table.m_max() != L - 1 || table.k() != k || table.gamma0() != g0)
        throw std::invalid_argument("max_order_pdf: table does not match the selection config");

    if (x == 0.0)
        return (L == 1 && k == 1) ? 1.0 / g0 : 0.0;

    const double ln_lead = std::log(static_cast<double>(L)) - k * std::log(g0) -
                           specfun::ln_gamma(k);
    const double ln_x = std::log(x);
    SignedLogSum acc;
    for (int m = 0; m < L; ++m) {
        const int sign = (m % 2 == 0) ? 1 : -1;
        const double ln_binom = std::log(binomial(L - 1, m));
        const auto row = table.row(m);
        for (int q = 0; q < static_cast<int>(row.size()); ++q) {
            const double c = row[static_cast<std::size_t>(q)];
            if (c == 0.0)
                continue;
            const double ln_term = ln_lead + ln_binom + std::log(c) + (q + k - 1) * ln_x -
                                   (m + 1) * x / g0;
            acc.add(sign, ln_term);
        }
    }
    if (diag != nullptr)
        diag->record(acc.cancellation_ratio());
    return acc.value();
}

double max_order_pdf_direct(const SelectionConfig& sel, double x) {
    if (!(x >= 0.0))
        throw std::domain_error("max_order_pdf_direct: x must be >= 0");
    const int L = sel.num_candidates;
    const double F = snr_cdf(sel.branch, x);
    return L * std::pow(F, L - 1) * snr_pdf(sel.branch, x);
}

double general_order_pdf(const SelectionConfig& sel, int l, double x) {
    const int L = sel.num_candidates;
    if (l < 1 || l > L)
        throw std::out_of_range("general_order_pdf: order index out of range");
    if (!(x >= 0.0))
        throw std::domain_error("general_order_pdf: x must be >= 0");
    const double F = snr_cdf(sel.branch, x);
    const double lead = std::exp(specfun::ln_gamma(L + 1) - specfun::ln_gamma(l) -
                                 specfun::ln_gamma(L - l + 1));
    return lead * std::pow(F, l - 1) * std::pow(1.0 - F, L - l) * snr_pdf(sel.branch, x);
}

}  // namespace ecap
