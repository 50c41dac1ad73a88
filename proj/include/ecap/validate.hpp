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

#ifndef ECAP_VALIDATE_HPP
#define ECAP_VALIDATE_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace ecap {

// Cross-validation of every closed form against the in-repo Monte Carlo
// oracle plus the exact identity and limit checks. Each numbered group
// below is one gate of the release checklist:
//
//   1  closed-form vs Monte Carlo effective capacity on the reference grid
//   2  optimal-vs-constant power gains at 10 dB, theta = 0.1
//   3  receive-selection gains over the no-selection baseline at 20 dB
//   4  mean power constraint, analytic and Monte Carlo
//   5  loose-QoS limit: effective capacity -> ergodic capacity
//   6  strict-QoS limit: effective capacity -> log2(1 + alpha) floor
//   7  exact combinatorial identities
//   8  cutoff -> 1 convergence with rising SNR
//   9  selected-SNR density: normalization and chi-square against samples
//  10  monotonicity in theta, average SNR and selection candidates

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationOptions {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 12345;
    bool quick = false;  // 1e5 trials, 5 sigma MC tolerances
    int jobs = 1;

    std::uint64_t effective_trials() const { return quick ? std::min<std::uint64_t>(trials, 100'000) : trials; }
    double mc_sigma() const { return quick ? 5.0 : 3.0; }
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass)
                return false;
        return true;
    }
    int failures() const {
        int n = 0;
        for (const auto& c : checks)
            if (!c.pass)
                ++n;
        return n;
    }
};

// Runs one numbered group (1..10) or everything.
ValidationReport run_criterion(int index, const ValidationOptions& opt);
ValidationReport run_validation(const ValidationOptions& opt);

// Renderers. The text table is for humans; the JSON report is byte-stable
// for a fixed seed and option set.
void write_report_text(std::ostream& out, const ValidationReport& report);
void write_report_json(std::ostream& out, const ValidationOptions& opt,
                       const ValidationReport& report);

// Survival function of the chi-square distribution; shared with tests.
double chi_square_sf(double statistic, int dof);

}  // namespace ecap

#endif
