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

#include "ecap/ras.hpp"

#include <cmath>
#include <numbers>

#include "ecap/specfun.hpp"

namespace ecap {

double miso_service_rate(const SystemConfig& cfg, double snr) {
    if (!(snr >= 0.0))
        throw std::domain_error("miso_service_rate: snr must be >= 0");
    return cfg.bt() * std::log1p(snr / cfg.mt) / std::numbers::ln2;
}

namespace {

double ln_ras_expectation_impl(const SystemConfig& cfg, const CoefficientTable& table,
                               EvalDiagnostics* diag, double* value_out) {
    const int K = cfg.mt;      // branch shape
    const int L = cfg.mr;      // selection candidates
    const double g0 = cfg.gamma0;
    const double tt = cfg.theta_tilde();
    if (table.m_max() != L - 1 || table.k() != K || table.gamma0() != g0)
        throw std::invalid_argument("ras_expectation: table does not match the config");

    // int_0^inf (1+x/mt)^{-tt} x^{a-1} e^{-(m+1)x/g0} dx
    //   = mt^a Gamma(a) psi(a, a - tt + 1; (m+1)mt/g0),  a = K + q
    const double ln_lead = std::log(static_cast<double>(L)) - K * std::log(g0) -
                           specfun::ln_gamma(K);
    const double ln_mt = std::log(static_cast<double>(K));
    SignedLogSum acc;
    for (int m = 0; m < L; ++m) {
        const int sign = (m % 2 == 0) ? 1 : -1;
        const double ln_binom = std::log(binomial(L - 1, m));
        const double z = (m + 1) * K / g0;
        const auto row = table.row(m);
        for (int q = 0; q < static_cast<int>(row.size()); ++q) {
            const double c = row[static_cast<std::size_t>(q)];
            if (c == 0.0)
                continue;
            const double a = K + q;
            const double ln_psi = specfun::ln_tricomi_u(a, a - tt + 1.0, z);
            acc.add(sign, ln_lead + ln_binom + std::log(c) + a * ln_mt +
                              specfun::ln_gamma(a) + ln_psi);
        }
    }
    if (diag != nullptr)
        diag->record(acc.cancellation_ratio());
    if (value_out != nullptr)
        *value_out = acc.value();
    return acc.ln_abs_value();
}

}  // namespace

double ras_expectation(const SystemConfig& cfg, const CoefficientTable& table,
                       EvalDiagnostics* diag) {
    double value = 0.0;
    ln_ras_expectation_impl(cfg, table, diag, &value);
    return value;
}

double ras_expectation(const SystemConfig& cfg, EvalDiagnostics* diag) {
    const CoefficientTable table(BranchSnrDist(cfg.mt, cfg.gamma0), cfg.mr - 1);
    return ras_expectation(cfg, table, diag);
}

double ln_ras_expectation(const SystemConfig& cfg, EvalDiagnostics* diag) {
    const CoefficientTable table(BranchSnrDist(cfg.mt, cfg.gamma0), cfg.mr - 1);
    return ln_ras_expectation_impl(cfg, table, diag, nullptr);
}

double ras_effective_capacity(const SystemConfig& cfg, EvalDiagnostics* diag) {
    return -ln_ras_expectation(cfg, diag) / cfg.theta;
}

}  // namespace ecap
