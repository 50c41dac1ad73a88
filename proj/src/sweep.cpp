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

#include "ecap/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ecap/asymptotics.hpp"
#include "ecap/ras.hpp"
#include "ecap/tas.hpp"

namespace ecap {

namespace {

std::string grid_point_name(const SweepRow& row) {
    std::ostringstream os;
    os << "scheme=" << mc::to_string(row.scheme) << " power=" << mc::to_string(row.power)
       << " mt=" << row.mt << " mr=" << row.mr << " snr_db=" << row.gamma0_db
       << " theta=" << row.theta;
    return os.str();
}

void evaluate_row(const SweepRequest& req, SweepRow& row) {
    const SystemConfig cfg(row.mt, row.mr, db_to_linear(row.gamma0_db), row.theta,
                           req.bandwidth_hz, req.frame_s);
    const double bt = cfg.bt();

    if (row.scheme == mc::Scheme::ras) {
        row.ec_norm_analytic = ras_effective_capacity(cfg) / bt;
    } else {
        const SystemConfig cfg_sel =
            row.scheme == mc::Scheme::joint ? joint_selection_config(cfg) : cfg;
        if (row.power == mc::PowerMode::optimal) {
            const PowerPolicy policy = solve_cutoff(cfg_sel);
            row.cutoff = policy.cutoff;
            row.ec_norm_analytic = tas_effective_capacity(cfg_sel, policy) / bt;
        } else {
            row.ec_norm_analytic = constant_power_effective_capacity(cfg_sel) / bt;
        }
        if (req.asymptotes) {
            const PowerPolicy wf = solve_cutoff_waterfilling(cfg_sel);
            row.ergodic_norm = ergodic_capacity(cfg_sel, wf) / bt;
            row.ec_inf_norm = ec_infinity(cfg_sel) / bt;
        }
    }

    if (req.with_mc) {
        const mc::PowerMode mode = row.power;
        const PowerPolicy* policy_ptr = nullptr;
        PowerPolicy policy(1.0, 0.0);
        if (row.scheme != mc::Scheme::ras && mode == mc::PowerMode::optimal) {
            const SystemConfig cfg_sel =
                row.scheme == mc::Scheme::joint ? joint_selection_config(cfg) : cfg;
            policy = solve_cutoff(cfg_sel);
            policy_ptr = &policy;
        }
        const mc::McEstimate est = mc::mc_effective_capacity(cfg, row.scheme, mode, req.trials,
                                                             req.seed, policy_ptr, 1);
        row.ec_norm_mc = est.mean / bt;
        row.mc_std_error = est.std_error / bt;
    }
}

std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string format_optional(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepRequest& req) {
    if (req.mt_list.empty() || req.mr_list.empty() || req.snr_db.empty() || req.thetas.empty())
        throw std::invalid_argument("run_sweep: empty grid axis");
    if (req.trials < 1)
        throw std::invalid_argument("run_sweep: trials must be >= 1");

    std::vector<mc::PowerMode> modes;
    if (req.scheme == mc::Scheme::ras) {
        modes = {mc::PowerMode::constant};
    } else {
        switch (req.power) {
            case PowerSelection::optimal: modes = {mc::PowerMode::optimal}; break;
            case PowerSelection::constant: modes = {mc::PowerMode::constant}; break;
            case PowerSelection::both:
                modes = {mc::PowerMode::optimal, mc::PowerMode::constant};
                break;
        }
    }

    std::vector<double> snr = req.snr_db;
    std::sort(snr.begin(), snr.end());
    std::vector<double> thetas = req.thetas;
    std::sort(thetas.begin(), thetas.end());

    std::vector<SweepRow> rows;
    for (const int mt : req.mt_list)
        for (const int mr : req.mr_list)
            for (const mc::PowerMode mode : modes)
                for (const double theta : thetas)
                    for (const double db : snr) {
                        SweepRow row;
                        row.mt = mt;
                        row.mr = mr;
                        row.gamma0_db = db;
                        row.theta = theta;
                        row.scheme = req.scheme;
                        row.power = mode;
                        rows.push_back(row);
                    }

    const int workers = std::max(1, std::min<int>(req.jobs, static_cast<int>(rows.size())));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::vector<std::string> errors(rows.size());

    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < rows.size(); i = next.fetch_add(1)) {
            try {
                evaluate_row(req, rows[i]);
            } catch (const std::exception& e) {
                errors[i] = e.what();
                failed = true;
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto& th : pool)
            th.join();
    }

    if (failed) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (!errors[i].empty())
                throw SweepError("numeric failure at " + grid_point_name(rows[i]) + ": " +
                                 errors[i]);
    }
    return rows;
}

void write_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << "gamma0_db,theta,scheme,power,ec_norm_analytic,ec_norm_mc,mc_std_error,cutoff,"
           "ergodic_norm,ec_inf_norm\n";
    for (const SweepRow& row : rows) {
        out << format_double(row.gamma0_db) << ',' << format_double(row.theta) << ','
            << mc::to_string(row.scheme) << ',' << mc::to_string(row.power) << ','
            << format_double(row.ec_norm_analytic) << ',' << format_optional(row.ec_norm_mc)
            << ',' << format_optional(row.mc_std_error) << ',' << format_optional(row.cutoff)
            << ',' << format_optional(row.ergodic_norm) << ','
            << format_optional(row.ec_inf_norm) << '\n';
    }
}

void write_json(std::ostream& out, const SweepRequest& req, std::span<const SweepRow> rows) {
    nlohmann::ordered_json doc;
    doc["scheme"] = mc::to_string(req.scheme);
    doc["bandwidth_hz"] = req.bandwidth_hz;
    doc["frame_s"] = req.frame_s;
    doc["trials"] = req.trials;
    doc["seed"] = req.seed;
    doc["with_mc"] = req.with_mc;
    doc["asymptotes"] = req.asymptotes;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const SweepRow& row : rows) {
        nlohmann::ordered_json j;
        j["mt"] = row.mt;
        j["mr"] = row.mr;
        j["gamma0_db"] = row.gamma0_db;
        j["theta"] = row.theta;
        j["scheme"] = mc::to_string(row.scheme);
        j["power"] = mc::to_string(row.power);
        j["ec_norm_analytic"] = row.ec_norm_analytic;
        if (row.ec_norm_mc)
            j["ec_norm_mc"] = *row.ec_norm_mc;
        if (row.mc_std_error)
            j["mc_std_error"] = *row.mc_std_error;
        if (row.cutoff)
            j["cutoff"] = *row.cutoff;
        if (row.ergodic_norm)
            j["ergodic_norm"] = *row.ergodic_norm;
        if (row.ec_inf_norm)
            j["ec_inf_norm"] = *row.ec_inf_norm;
        doc["rows"].push_back(j);
    }
    out << doc.dump(2) << '\n';
}

}  // namespace ecap
