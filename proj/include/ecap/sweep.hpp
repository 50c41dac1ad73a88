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

#ifndef ECAP_SWEEP_HPP
#define ECAP_SWEEP_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecap/montecarlo.hpp"

namespace ecap {

enum class PowerSelection { optimal, constant, both };

struct SweepRequest {
    mc::Scheme scheme = mc::Scheme::ras;
    std::vector<int> mt_list{1};
    std::vector<int> mr_list{1};
    std::vector<double> snr_db{0.0};
    std::vector<double> thetas{0.01};
    PowerSelection power = PowerSelection::optimal;
    bool with_mc = false;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    bool asymptotes = false;
    int jobs = 1;
    double bandwidth_hz = 100e3;
    double frame_s = 1e-3;
};

struct SweepRow {
    int mt = 0;
    int mr = 0;
    double gamma0_db = 0.0;
    double theta = 0.0;
    mc::Scheme scheme = mc::Scheme::ras;
    mc::PowerMode power = mc::PowerMode::constant;
    double ec_norm_analytic = 0.0;
    std::optional<double> ec_norm_mc;
    std::optional<double> mc_std_error;
    std::optional<double> cutoff;
    std::optional<double> ergodic_norm;
    std::optional<double> ec_inf_norm;
};

// Numeric failure at one grid point; what() names the point.
struct SweepError : std::runtime_error {
    explicit SweepError(const std::string& what) : std::runtime_error(what) {}
};

// Evaluates the request over the full grid. Rows are ordered by
// (mt, mr, power, theta) with the swept average SNR varying fastest in
// ascending order. Grid points are evaluated concurrently up to
// request.jobs; output order does not depend on it.
std::vector<SweepRow> run_sweep(const SweepRequest& request);

// CSV with the fixed header
// gamma0_db,theta,scheme,power,ec_norm_analytic,ec_norm_mc,mc_std_error,
// cutoff,ergodic_norm,ec_inf_norm; empty cells for values a row does not
// carry. Byte-stable for identical inputs.
void write_csv(std::ostream& out, std::span<const SweepRow> rows);

// JSON mirror of the sweep: request parameters plus one object per row
// (including mt/mr, which the fixed CSV header cannot carry).
void write_json(std::ostream& out, const SweepRequest& request, std::span<const SweepRow> rows);

}  // namespace ecap

#endif
