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

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ecap/sweep.hpp"
#include "ecap/validate.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

// "a:b:c" -> a, a+b, ..., c (inclusive); "x,y,z" -> the listed values.
std::vector<double> parse_double_axis(const std::string& text) {
    std::vector<double> values;
    if (text.find(':') != std::string::npos) {
        double start, step, stop;
        char c1, c2;
        std::istringstream is(text);
        if (!(is >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':')
            throw CLI::ValidationError("range must be start:step:stop, got '" + text + "'");
        if (!(step > 0.0) || stop < start)
            throw CLI::ValidationError("range '" + text + "' must have step > 0 and stop >= start");
        for (double v = start; v <= stop + 1e-12 * std::abs(step); v += step)
            values.push_back(v);
        return values;
    }
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ','))
        values.push_back(std::stod(item));
    if (values.empty())
        throw CLI::ValidationError("empty value list '" + text + "'");
    return values;
}

// "a:b" -> a..b step 1; "a:s:b" -> stepped; comma lists and single ints.
std::vector<int> parse_int_axis(const std::string& text) {
    std::vector<int> values;
    const auto colons = std::count(text.begin(), text.end(), ':');
    if (colons == 1) {
        int start, stop;
        char c1;
        std::istringstream is(text);
        if (!(is >> start >> c1 >> stop))
            throw CLI::ValidationError("range must be start:stop, got '" + text + "'");
        for (int v = start; v <= stop; ++v)
            values.push_back(v);
    } else if (colons == 2) {
        int start, step, stop;
        char c1, c2;
        std::istringstream is(text);
        if (!(is >> start >> c1 >> step >> c2 >> stop) || step < 1)
            throw CLI::ValidationError("range must be start:step:stop, got '" + text + "'");
        for (int v = start; v <= stop; v += step)
            values.push_back(v);
    } else {
        std::istringstream is(text);
        std::string item;
        while (std::getline(is, item, ','))
            values.push_back(std::stoi(item));
    }
    if (values.empty())
        throw CLI::ValidationError("empty value list '" + text + "'");
    return values;
}

// "lo:hi" or "lo:hi:count" -> count log-spaced points, default 41.
std::vector<double> parse_log_axis(const std::string& text) {
    std::istringstream is(text);
    std::string item;
    std::vector<std::string> parts;
    while (std::getline(is, item, ':'))
        parts.push_back(item);
    if (parts.size() != 2 && parts.size() != 3)
        throw CLI::ValidationError("log range must be lo:hi or lo:hi:count, got '" + text + "'");
    const double lo = std::stod(parts[0]);
    const double hi = std::stod(parts[1]);
    const int count = parts.size() == 3 ? std::stoi(parts[2]) : 41;
    if (!(lo > 0.0) || !(hi > lo) || count < 2)
        throw CLI::ValidationError("log range '" + text + "' must have 0 < lo < hi, count >= 2");
    std::vector<double> values;
    for (int i = 0; i < count; ++i)
        values.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
    return values;
}

std::string insert_geometry_suffix(const std::string& path, int mt, int mr) {
    const auto dot = path.rfind('.');
    const std::string suffix = "_mt" + std::to_string(mt) + "_mr" + std::to_string(mr);
    if (dot == std::string::npos || path.find('/', dot) != std::string::npos)
        return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

int run_sweep_command(const ecap::SweepRequest& request, const std::string& out_path,
                      const std::string& format) {
    std::vector<ecap::SweepRow> rows;
    try {
        rows = ecap::run_sweep(request);
    } catch (const ecap::SweepError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }

    if (format == "json") {
        if (out_path == "-") {
            ecap::write_json(std::cout, request, rows);
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot open " << out_path << "\n";
                return 3;
            }
            ecap::write_json(out, request, rows);
            std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
        }
        return 0;
    }

    // The CSV header is fixed and does not carry the antenna geometry, so a
    // sweep spanning several (mt, mr) pairs is split into one file per pair.
    std::map<std::pair<int, int>, std::vector<ecap::SweepRow>> by_geometry;
    for (const auto& row : rows)
        by_geometry[{row.mt, row.mr}].push_back(row);

    if (out_path == "-") {
        if (by_geometry.size() > 1) {
            std::cerr << "error: multi-geometry sweep cannot stream CSV to stdout; "
                         "use --format json or --out <file>\n";
            return 2;
        }
        ecap::write_csv(std::cout, rows);
        return 0;
    }

    for (const auto& [geometry, group] : by_geometry) {
        const std::string path =
            by_geometry.size() == 1
                ? out_path
                : insert_geometry_suffix(out_path, geometry.first, geometry.second);
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open " << path << "\n";
            return 3;
        }
        ecap::write_csv(out, group);
        std::cout << "wrote " << group.size() << " rows to " << path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"effective capacity of antenna-selection MIMO links"};
    app.require_subcommand(1);
    app.set_config("--config")->configurable(false);

    // --- sweep ---
    auto* sweep = app.add_subcommand("sweep", "evaluate an effective-capacity sweep grid");
    std::string scheme_name;
    std::string mt_text = "1", mr_text = "1";
    std::string snr_text = "0:2:20";
    std::string theta_text, theta_log_text;
    std::string power_name = "optimal";
    std::string out_path = "sweep.csv";
    std::string format = "csv";
    ecap::SweepRequest request;

    sweep->add_option("--scheme", scheme_name, "selection scheme")
        ->required()
        ->check(CLI::IsMember({"ras", "tas", "joint"}));
    sweep->add_option("--mt", mt_text, "transmit antennas (int, list or range)");
    sweep->add_option("--mr", mr_text, "receive antennas (int, list or range)");
    sweep->add_option("--snr-db", snr_text, "average SNR grid in dB (list or start:step:stop)");
    sweep->add_option("--theta", theta_text, "QoS exponent grid (list or start:step:stop)");
    sweep->add_option("--theta-log", theta_log_text,
                      "log-spaced QoS exponent grid lo:hi[:count]");
    sweep->add_option("--power", power_name, "power adaptation for tas/joint")
        ->check(CLI::IsMember({"optimal", "constant", "both"}));
    sweep->add_flag("--mc", request.with_mc, "add Monte Carlo estimates to every row");
    sweep->add_option("--trials", request.trials, "Monte Carlo trials per grid point")
        ->capture_default_str();
    sweep->add_option("--seed", request.seed, "Monte Carlo seed")->capture_default_str();
    sweep->add_option("--out", out_path, "output path ('-' for stdout)")
        ->capture_default_str();
    sweep->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--bandwidth-hz", request.bandwidth_hz, "system bandwidth B")
        ->capture_default_str();
    sweep->add_option("--frame-s", request.frame_s, "frame duration T")
        ->capture_default_str();
    sweep->add_option("--jobs", request.jobs, "concurrent grid-point evaluations")
        ->capture_default_str();
    sweep->add_flag("--asymptotes", request.asymptotes,
                    "add ergodic and strict-QoS limit columns (tas/joint)");

    // --- validate ---
    auto* validate = app.add_subcommand("validate", "run the full validation suite");
    ecap::ValidationOptions vopt;
    std::string vjson_path;
    validate->add_flag("--quick", vopt.quick, "1e5 trials and widened MC tolerances");
    validate->add_option("--trials", vopt.trials, "Monte Carlo trials")->capture_default_str();
    validate->add_option("--seed", vopt.seed, "Monte Carlo seed")->capture_default_str();
    validate->add_option("--jobs", vopt.jobs, "Monte Carlo worker threads")
        ->capture_default_str();
    validate->add_option("--json", vjson_path, "also write the machine-readable report here");

    // --- version ---
    auto* version = app.add_subcommand("version", "print the version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (version->parsed()) {
        std::cout << "ecap " << kVersion << "\n";
        return 0;
    }

    if (sweep->parsed()) {
        try {
            request.scheme = scheme_name == "ras"   ? ecap::mc::Scheme::ras
                             : scheme_name == "tas" ? ecap::mc::Scheme::tas
                                                    : ecap::mc::Scheme::joint;
            if (request.scheme == ecap::mc::Scheme::ras && sweep->count("--power") > 0 &&
                power_name != "constant")
                throw CLI::ValidationError("--power does not apply to the ras scheme");
            request.power = power_name == "optimal"    ? ecap::PowerSelection::optimal
                            : power_name == "constant" ? ecap::PowerSelection::constant
                                                       : ecap::PowerSelection::both;
            request.mt_list = parse_int_axis(mt_text);
            request.mr_list = parse_int_axis(mr_text);
            request.snr_db = parse_double_axis(snr_text);
            if (!theta_text.empty() && !theta_log_text.empty())
                throw CLI::ValidationError("--theta and --theta-log are mutually exclusive");
            if (!theta_text.empty())
                request.thetas = parse_double_axis(theta_text);
            else if (!theta_log_text.empty())
                request.thetas = parse_log_axis(theta_log_text);
            else
                throw CLI::ValidationError("one of --theta / --theta-log is required");
            for (const int mt : request.mt_list)
                for (const int mr : request.mr_list)
                    if (mt < 1 || mr < 1)
                        throw CLI::ValidationError("antenna counts must be >= 1");
        } catch (const CLI::Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
        return run_sweep_command(request, out_path, format);
    }

    // validate
    const ecap::ValidationReport report = ecap::run_validation(vopt);
    ecap::write_report_text(std::cout, report);
    if (!vjson_path.empty()) {
        std::ofstream out(vjson_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open " << vjson_path << "\n";
            return 3;
        }
        ecap::write_report_json(out, vopt, report);
    }
    return report.all_pass() ? 0 : 1;
}
