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

#ifndef ECAP_TAS_HPP
#define ECAP_TAS_HPP

#include <stdexcept>
#include <string>

#include "ecap/orderstats.hpp"
#include "ecap/summation.hpp"
#include "ecap/system_config.hpp"

namespace ecap {

// Transmit antenna selection: the transmitter picks, from mt candidates, the
// antenna with the largest receive-combined SNR and drives it with a
// QoS-aware power coefficient mu. Selection is over L = mt candidates whose
// branch law has shape K = mr.

struct SolveError : std::runtime_error {
    explicit SolveError(const std::string& what) : std::runtime_error(what) {}
};

// Cutoff/exponent pair defining the power coefficient. Policies returned by
// solve_cutoff satisfy the mean power constraint E{mu} = 1 to within the
// solver tolerance. theta_tilde = 0 gives classical water-filling.
//
// The cutoff shrinks like (1+alpha)^{-(theta_tilde+1)} for strict QoS, far
// below the double range well before theta_tilde reaches 10^3, so the
// logarithm is the authoritative representation; `cutoff` is its exp and
// may underflow to 0.
struct PowerPolicy {
    double cutoff;       // zero-transmission threshold, linear SNR
    double ln_cutoff;
    double theta_tilde;  // normalized QoS exponent

    PowerPolicy(double cutoff_, double theta_tilde_);
    static PowerPolicy from_ln(double ln_cutoff_, double theta_tilde_);

  private:
    PowerPolicy() = default;
};

// mu(snr): 0 below the cutoff, else
// (1/cutoff)^{1/(tt+1)} (1/snr)^{tt/(tt+1)} - 1/snr. Continuous at the
// cutoff and nonnegative everywhere.
double mu_coefficient(const PowerPolicy& policy, double snr);

// Service rate B*T*log2(1 + mu(snr)*snr) in bits per frame.
double simo_service_rate(const SystemConfig& cfg, const PowerPolicy& policy, double snr);

// Closed-form E{mu} over the selected-antenna SNR for a trial cutoff, a
// double sum of upper incomplete gamma terms. The Gamma(mr+q-1, .) term
// degenerates to a = 0 when mr = 1, q = 0 and is evaluated as E1 there.
double mean_mu(const SystemConfig& cfg, double cutoff, EvalDiagnostics* diag = nullptr);

// Same, but with the cutoff and exponent taken from a policy (handles
// cutoffs whose plain value underflows).
double mean_mu(const SystemConfig& cfg, const PowerPolicy& policy,
               EvalDiagnostics* diag = nullptr);

// Same with the theta_tilde -> 0 (water-filling) coefficient.
double mean_mu_waterfilling(const SystemConfig& cfg, double cutoff,
                            EvalDiagnostics* diag = nullptr);

// Root of E{mu} = 1, found by bracketed solve on the strictly decreasing
// mean_mu. The bracket starts at [1e-12, 1] and is grown geometrically
// (both directions, in ln space) until the sign changes.
// |mean_mu - 1| <= 1e-9 on return. Throws SolveError with the last
// evaluated values if no bracket is found.
PowerPolicy solve_cutoff(const SystemConfig& cfg);
PowerPolicy solve_cutoff_waterfilling(const SystemConfig& cfg);

// E{(1 + mu * snr)^{-theta_tilde}}: the below-cutoff mass plus the
// (snr/cutoff)^{-tt/(tt+1)} tail, via lower/upper incomplete gammas.
// The ln form stays finite where the expectation underflows (strict QoS).
double tas_expectation(const SystemConfig& cfg, const PowerPolicy& policy,
                       EvalDiagnostics* diag = nullptr);
double ln_tas_expectation(const SystemConfig& cfg, const PowerPolicy& policy,
                          EvalDiagnostics* diag = nullptr);

// -(1/theta) ln tas_expectation, bits per frame. The single-argument form
// solves the cutoff internally.
double tas_effective_capacity(const SystemConfig& cfg, EvalDiagnostics* diag = nullptr);
double tas_effective_capacity(const SystemConfig& cfg, const PowerPolicy& policy,
                              EvalDiagnostics* diag = nullptr);

// Baseline without power adaptation (mu = 1 on the selected antenna):
// -(1/theta) ln E{(1 + snr)^{-theta_tilde}} with the same selection law.
double constant_power_expectation(const SystemConfig& cfg, EvalDiagnostics* diag = nullptr);
double ln_constant_power_expectation(const SystemConfig& cfg, EvalDiagnostics* diag = nullptr);
double constant_power_effective_capacity(const SystemConfig& cfg, EvalDiagnostics* diag = nullptr);

// Joint transmit/receive selection reuses every TAS formula after replacing
// mt by mt*mr and mr by 1.
SystemConfig joint_selection_config(const SystemConfig& cfg);

}  // namespace ecap

#endif
