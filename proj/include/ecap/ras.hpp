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

#ifndef ECAP_RAS_HPP
#define ECAP_RAS_HPP

#include "ecap/orderstats.hpp"
#include "ecap/summation.hpp"
#include "ecap/system_config.hpp"

namespace ecap {

// Receive antenna selection: the receiver picks the antenna with the largest
// instantaneous SNR; the transmit power is split evenly over the mt transmit
// antennas. Closed forms below select over L = mr candidates whose branch
// law has shape K = mt.

// Service rate B*T*log2(1 + snr/mt) in bits per frame.
double miso_service_rate(const SystemConfig& cfg, double snr);

// E{(1 + selected_snr/mt)^(-theta_tilde)}, evaluated through the expanded
// order-statistic density: a double sum of Gamma(mt+q) * psi(mt+q,
// mt+q-theta_tilde+1; (m+1)mt/gamma0) terms, combined per-term in ln-space
// with sign-tracked compensated summation. Always in (0, 1].
double ras_expectation(const SystemConfig& cfg, EvalDiagnostics* diag = nullptr);

// Overload reusing a prebuilt coefficient table (K = mt, m_max = mr - 1).
double ras_expectation(const SystemConfig& cfg, const CoefficientTable& table,
                       EvalDiagnostics* diag = nullptr);

// ln of the expectation, finite even where the value itself underflows
// under a strict QoS exponent.
double ln_ras_expectation(const SystemConfig& cfg, EvalDiagnostics* diag = nullptr);

// -(1/theta) ln ras_expectation, bits per frame.
double ras_effective_capacity(const SystemConfig& cfg, EvalDiagnostics* diag = nullptr);

}  // namespace ecap

#endif
