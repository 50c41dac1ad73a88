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

#ifndef ECAP_ASYMPTOTICS_HPP
#define ECAP_ASYMPTOTICS_HPP

#include <span>
#include <vector>

#include "ecap/summation.hpp"
#include "ecap/system_config.hpp"
#include "ecap/tas.hpp"

namespace ecap {

// Loose-QoS limit of the power coefficient: 0 below the cutoff, else
// 1/cutoff - 1/snr (classical water-filling).
double waterfilling_mu(double cutoff, double snr);

// Intermediate integrals of the ergodic-capacity closed form for one (m, q)
// term. With g0 = gamma0 / ((m+1) cutoff):
//   i4r[r] = int_0^inf ln(1+g0 z) z^r e^{-z} dz      (closed form via Ei)
//   i3r[r] = g0^{r+1} i4r[r]
//   i2q    = sum_r C(q+mr-1, r) i3r[r]
//   i1q    = cutoff^{q+mr} e^{-(m+1)cutoff/gamma0} i2q
struct ErgodicTerms {
    double g0 = 0.0;
    double i1q = 0.0;
    double i2q = 0.0;
    std::vector<double> i3r;
    std::vector<double> i4r;
};

ErgodicTerms ergodic_terms(const SystemConfig& cfg, double cutoff, int m, int q,
                           EvalDiagnostics* diag = nullptr);

// Mean water-filled rate E{B T log2(1 + mu_wf * snr)} in bits per frame,
// assembled from the i1q chain. The single-argument form first solves the
// water-filling cutoff E{mu_wf} = 1.
double ergodic_capacity(const SystemConfig& cfg, EvalDiagnostics* diag = nullptr);
double ergodic_capacity(const SystemConfig& cfg, const PowerPolicy& wf_policy,
                        EvalDiagnostics* diag = nullptr);

// Strict-QoS limit constant: alpha = 1 / E{1/snr} over the selected antenna.
// Evaluated term-wise for mr >= 2; for mr = 1 the m = 0, q = 0 term carries
// Gamma(0), so the expectation falls back to direct quadrature (finite for
// mt >= 2); the 1x1 harmonic moment diverges and alpha = 0.
double alpha_constant(const SystemConfig& cfg, EvalDiagnostics* diag = nullptr);

// B T log2(1 + alpha), the effective-capacity floor as theta -> inf.
double ec_infinity(const SystemConfig& cfg, EvalDiagnostics* diag = nullptr);

// Exact combinatorial identities behind the cutoff-convergence proofs,
// verified in integer arithmetic.
struct IdentityReport {
    bool weighted_binomial_sum_ok;   // sum_q C(m,q) (q+1)! / (m+1)^{1+q} = 1, m <= 10
    bool central_binomial_sum_ok;    // sum_i C(I+i,i) 2^{I-i} = 4^I, I <= 15
    bool alternating_collapse_ok;    // sum_m (-1)^m C(n-1,m)/(m+1) = 1/n, n <= 10
    bool all() const {
        return weighted_binomial_sum_ok && central_binomial_sum_ok && alternating_collapse_ok;
    }
};

IdentityReport identity_suite();

// Backward partial sums of the weighted binomial identity after p >= 2
// steps, exact in 128-bit integers; used by tests.
bool weighted_binomial_partial_sum_matches(int m, int p);

// Tracks |cutoff - 1| for a loose-QoS policy as gamma0 sweeps upward.
struct CutoffConvergence {
    int mt = 0;
    int mr = 0;
    double theta = 0.0;
    std::vector<double> gamma0_db;
    std::vector<double> cutoff;
    std::vector<double> deviation;  // |cutoff - 1|
    bool monotone_decreasing = false;
    double final_deviation = 0.0;

    bool pass(double threshold = 0.05) const {
        return monotone_decreasing && final_deviation < threshold;
    }
};

CutoffConvergence cutoff_unity_check(int mt, int mr, double theta,
                                     std::span<const double> gamma0_db_grid,
                                     double bandwidth_hz = 100e3, double frame_s = 1e-3);

}  // namespace ecap

#endif
