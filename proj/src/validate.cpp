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

#include "ecap/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "ecap/asymptotics.hpp"
#include "ecap/montecarlo.hpp"
#include "ecap/orderstats.hpp"
#include "ecap/quadrature.hpp"
#include "ecap/ras.hpp"
#include "ecap/specfun.hpp"
#include "ecap/tas.hpp"

namespace ecap {

double chi_square_sf(double statistic, int dof) {
    if (dof < 1)
        throw std::invalid_argument("chi_square_sf: dof must be >= 1");
    if (statistic <= 0.0)
        return 1.0;
    return specfun::reg_upper_gamma(0.5 * dof, 0.5 * statistic);
}

namespace {

using mc::PowerMode;
using mc::Scheme;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct GridPoint {
    Scheme scheme;
    int mt, mr;
};

// scheme/geometry grid behind groups 1 and 4
const GridPoint kReferenceGrid[] = {
    {Scheme::ras, 3, 3}, {Scheme::tas, 2, 2}, {Scheme::tas, 3, 3}, {Scheme::joint, 3, 3}};
const double kSnrDbGrid[] = {0.0, 10.0, 20.0};
const double kThetaGrid[] = {0.01, 0.1};

std::string point_name(const GridPoint& p, double db, double theta) {
    std::ostringstream os;
    os << mc::to_string(p.scheme) << " " << p.mt << "x" << p.mr << " " << db
       << "dB theta=" << theta;
    return os.str();
}

void check_ec_vs_mc(std::vector<CheckResult>& out, const ValidationOptions& opt,
                    const GridPoint& p, double db, double theta) {
    const SystemConfig cfg(p.mt, p.mr, db_to_linear(db), theta);
    const double bt = cfg.bt();

    double analytic = 0.0;
    const PowerPolicy* policy_ptr = nullptr;
    PowerPolicy policy(1.0, 0.0);
    if (p.scheme == Scheme::ras) {
        analytic = ras_effective_capacity(cfg) / bt;
    } else {
        const SystemConfig cfg_sel =
            p.scheme == Scheme::joint ? joint_selection_config(cfg) : cfg;
        policy = solve_cutoff(cfg_sel);
        policy_ptr = &policy;
        analytic = tas_effective_capacity(cfg_sel, policy) / bt;
    }

    const mc::McEstimate est =
        mc::mc_effective_capacity(cfg, p.scheme, PowerMode::optimal, opt.effective_trials(),
                                  opt.seed, policy_ptr, opt.jobs);
    const double mc_norm = est.mean / bt;
    const double se_norm = est.std_error / bt;
    const double tol = std::max(0.01 * std::abs(analytic), opt.mc_sigma() * se_norm);
    const double gap = std::abs(analytic - mc_norm);

    CheckResult check;
    check.name = "analytic-vs-mc " + point_name(p, db, theta);
    check.pass = gap <= tol;
    check.detail = "analytic " + fmt(analytic) + ", mc " + fmt(mc_norm) + " +/- " +
                   fmt(se_norm) + ", gap " + fmt(gap) + ", tol " + fmt(tol);
    out.push_back(std::move(check));
}

ValidationReport criterion1(const ValidationOptions& opt) {
    ValidationReport report;
    for (const GridPoint& p : kReferenceGrid)
        for (const double db : kSnrDbGrid)
            for (const double theta : kThetaGrid)
                check_ec_vs_mc(report.checks, opt, p, db, theta);
    return report;
}

ValidationReport criterion2(const ValidationOptions&) {
    ValidationReport report;
    const struct {
        int mt, mr;
        double expected;
    } cases[] = {{2, 2, 2.67}, {3, 3, 1.96}};
    for (const auto& c : cases) {
        const SystemConfig cfg(c.mt, c.mr, db_to_linear(10.0), 0.1);
        const double bt = cfg.bt();
        const double optimal = tas_effective_capacity(cfg) / bt;
        const double constant = constant_power_effective_capacity(cfg) / bt;
        const double gain = optimal - constant;
        CheckResult check;
        check.name = "power-adaptation gain tas " + std::to_string(c.mt) + "x" +
                     std::to_string(c.mr) + " 10dB theta=0.1";
        check.pass = std::abs(gain - c.expected) <= 0.15;
        check.detail = "optimal " + fmt(optimal) + ", constant " + fmt(constant) + ", gain " +
                       fmt(gain) + ", expected " + fmt(c.expected) + " +/- 0.15";
        report.checks.push_back(std::move(check));
    }
    return report;
}

ValidationReport criterion3(const ValidationOptions&) {
    ValidationReport report;
    const struct {
        double theta, expected;
    } cases[] = {{0.01, 1.0}, {0.1, 2.0}};
    for (const auto& c : cases) {
        const SystemConfig selected(3, 3, db_to_linear(20.0), c.theta);
        const SystemConfig baseline(3, 1, db_to_linear(20.0), c.theta);
        const double bt = selected.bt();
        const double gain =
            (ras_effective_capacity(selected) - ras_effective_capacity(baseline)) / bt;
        CheckResult check;
        check.name = "selection gain ras 3x3 vs 3x1 20dB theta=" + fmt(c.theta);
        check.pass = std::abs(gain - c.expected) <= 0.3;
        check.detail = "gain " + fmt(gain) + ", expected " + fmt(c.expected) + " +/- 0.3";
        report.checks.push_back(std::move(check));
    }
    return report;
}

ValidationReport criterion4(const ValidationOptions& opt) {
    ValidationReport report;
    for (const GridPoint& p : kReferenceGrid) {
        if (p.scheme == Scheme::ras)
            continue;
        for (const double db : kSnrDbGrid)
            for (const double theta : kThetaGrid) {
                const SystemConfig cfg(p.mt, p.mr, db_to_linear(db), theta);
                const SystemConfig cfg_sel =
                    p.scheme == Scheme::joint ? joint_selection_config(cfg) : cfg;
                const PowerPolicy policy = solve_cutoff(cfg_sel);
                const double residual = std::abs(mean_mu(cfg_sel, policy) - 1.0);

                CheckResult analytic;
                analytic.name = "power-constraint analytic " + point_name(p, db, theta);
                analytic.pass = residual <= 1e-9;
                analytic.detail = "cutoff " + fmt(policy.cutoff) + ", |E{mu}-1| = " +
                                  fmt(residual);
                report.checks.push_back(std::move(analytic));

                const mc::McEstimate est = mc::mc_mean_mu(cfg, p.scheme, policy,
                                                          opt.effective_trials(), opt.seed,
                                                          opt.jobs);
                const double gap = std::abs(est.mean - 1.0);
                const double tol = opt.mc_sigma() * est.std_error;
                CheckResult sampled;
                sampled.name = "power-constraint mc " + point_name(p, db, theta);
                sampled.pass = gap <= tol;
                sampled.detail = "mc mean " + fmt(est.mean) + " +/- " + fmt(est.std_error) +
                                 ", gap " + fmt(gap) + ", tol " + fmt(tol);
                report.checks.push_back(std::move(sampled));
            }
    }
    return report;
}

ValidationReport criterion5(const ValidationOptions& opt) {
    ValidationReport report;
    const GridPoint cases[] = {{Scheme::tas, 2, 2}, {Scheme::tas, 3, 3}, {Scheme::tas, 1, 3}};
    for (const GridPoint& p : cases)
        for (const double db : kSnrDbGrid) {
            const SystemConfig cfg(p.mt, p.mr, db_to_linear(db), 0.01);
            const double bt = cfg.bt();
            const PowerPolicy wf = solve_cutoff_waterfilling(cfg);
            const double ergodic = ergodic_capacity(cfg, wf);

            const SystemConfig cfg_low(p.mt, p.mr, cfg.gamma0, 1e-6);
            const double ec_low = tas_effective_capacity(cfg_low);
            const double rel = std::abs(ec_low - ergodic) / ergodic;
            CheckResult limit;
            limit.name = "loose-qos limit tas " + std::to_string(p.mt) + "x" +
                         std::to_string(p.mr) + " " + fmt(db) + "dB";
            limit.pass = rel < 1e-3;
            limit.detail = "E_C(1e-6) " + fmt(ec_low / bt) + ", ergodic " + fmt(ergodic / bt) +
                           ", rel gap " + fmt(rel);
            report.checks.push_back(std::move(limit));

            const mc::McEstimate est =
                mc::mc_mean_rate(cfg, Scheme::tas, PowerMode::optimal, opt.effective_trials(),
                                 opt.seed, &wf, opt.jobs);
            const double gap = std::abs(est.mean - ergodic);
            const double tol = std::max(0.01 * ergodic, opt.mc_sigma() * est.std_error);
            CheckResult sampled;
            sampled.name = "ergodic closed form vs mc tas " + std::to_string(p.mt) + "x" +
                           std::to_string(p.mr) + " " + fmt(db) + "dB";
            sampled.pass = gap <= tol;
            sampled.detail = "closed form " + fmt(ergodic / bt) + ", mc " + fmt(est.mean / bt) +
                             " +/- " + fmt(est.std_error / bt) + ", tol " + fmt(tol / bt);
            report.checks.push_back(std::move(sampled));
        }
    return report;
}

ValidationReport criterion6(const ValidationOptions&) {
    ValidationReport report;
    const GridPoint cases[] = {{Scheme::tas, 2, 2}, {Scheme::tas, 3, 3}};
    const double theta_grid[] = {1.0, 3.0, 10.0};
    for (const GridPoint& p : cases)
        for (const double db : kSnrDbGrid) {
            const SystemConfig base(p.mt, p.mr, db_to_linear(db), 0.01);
            const double floor = ec_infinity(base);
            double gaps[3];
            for (int i = 0; i < 3; ++i) {
                const SystemConfig cfg(p.mt, p.mr, base.gamma0, theta_grid[i]);
                gaps[i] = std::abs(tas_effective_capacity(cfg) - floor) / floor;
            }
            CheckResult check;
            check.name = "strict-qos limit tas " + std::to_string(p.mt) + "x" +
                         std::to_string(p.mr) + " " + fmt(db) + "dB";
            check.pass = gaps[2] < 0.05 && gaps[0] >= gaps[1] && gaps[1] >= gaps[2];
            check.detail = "rel gaps at theta {1,3,10}: " + fmt(gaps[0]) + ", " + fmt(gaps[1]) +
                           ", " + fmt(gaps[2]) + "; floor " + fmt(base.normalized(floor));
            report.checks.push_back(std::move(check));
        }
    return report;
}

ValidationReport criterion7(const ValidationOptions&) {
    ValidationReport report;
    const IdentityReport ids = identity_suite();
    report.checks.push_back({"identity weighted binomial sum (m <= 10)",
                             ids.weighted_binomial_sum_ok, "exact integer arithmetic"});
    report.checks.push_back({"identity central binomial sum = 4^I (I <= 15)",
                             ids.central_binomial_sum_ok, "exact integer arithmetic"});
    report.checks.push_back({"identity alternating collapse = 1/n (n <= 10)",
                             ids.alternating_collapse_ok, "exact integer arithmetic"});
    return report;
}

ValidationReport criterion8(const ValidationOptions&) {
    ValidationReport report;
    const int pairs[][2] = {{1, 3}, {2, 2}, {2, 3}, {3, 1}, {3, 2}};
    std::vector<double> grid;
    for (double db = 0.0; db <= 40.0; db += 5.0)
        grid.push_back(db);
    for (const auto& pr : pairs) {
        const CutoffConvergence conv = cutoff_unity_check(pr[0], pr[1], 1e-5, grid);
        CheckResult check;
        check.name = "cutoff -> 1 convergence " + std::to_string(pr[0]) + "x" +
                     std::to_string(pr[1]);
        check.pass = conv.pass(0.05);
        check.detail = std::string("monotone ") + (conv.monotone_decreasing ? "yes" : "no") +
                       ", |cutoff-1| at 40dB = " + fmt(conv.final_deviation);
        report.checks.push_back(std::move(check));
    }
    return report;
}

// Equal-probability bin edges for the selected-SNR law via bisection on
// F(x)^L.
std::vector<double> max_quantile_edges(const SelectionConfig& sel, int bins) {
    std::vector<double> edges;
    edges.reserve(static_cast<std::size_t>(bins) - 1);
    double hi = sel.branch.gamma0 *
                (sel.branch.k + 40.0 * std::sqrt(static_cast<double>(sel.branch.k)) + 20.0);
    for (int i = 1; i < bins; ++i) {
        const double target = std::pow(static_cast<double>(i) / bins,
                                       1.0 / sel.num_candidates);
        double lo = 0.0, up = hi;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + up);
            if (snr_cdf(sel.branch, mid) < target)
                lo = mid;
            else
                up = mid;
        }
        edges.push_back(0.5 * (lo + up));
    }
    return edges;
}

void check_distribution(std::vector<CheckResult>& out, const ValidationOptions& opt, int K,
                        int L) {
    const double gamma0 = 10.0;
    const SelectionConfig sel(L, BranchSnrDist(K, gamma0));
    const CoefficientTable table(sel.branch, L - 1);

    // normalization of the expanded density
    auto pdf = [&](double x) { return max_order_pdf(sel, table, x); };
    const double mass = integrate_semi_infinite(pdf, 0.0, gamma0 * (K + 2.0),
                                                QuadratureSpec{1e-9, 1e-12, 4000});
    CheckResult norm;
    norm.name = "pdf normalization K=" + std::to_string(K) + " L=" + std::to_string(L);
    norm.pass = std::abs(mass - 1.0) <= 1e-6;
    norm.detail = "integral " + fmt(mass);
    out.push_back(std::move(norm));

    // chi-square of simulated maxima against the expanded density
    constexpr int kBins = 50;
    const std::vector<double> edges = max_quantile_edges(sel, kBins);
    std::vector<double> expected(kBins, 0.0);
    double prev_edge = 0.0;
    double assigned = 0.0;
    for (int b = 0; b < kBins - 1; ++b) {
        expected[static_cast<std::size_t>(b)] =
            integrate(pdf, prev_edge, edges[static_cast<std::size_t>(b)],
                      QuadratureSpec{1e-9, 1e-14, 2000});
        assigned += expected[static_cast<std::size_t>(b)];
        prev_edge = edges[static_cast<std::size_t>(b)];
    }
    expected[kBins - 1] = 1.0 - assigned;

    const std::uint64_t n = opt.effective_trials();
    const SystemConfig cfg(K, L, gamma0, 0.01);
    const mc::RngStream stream{opt.seed, mc::kSaltChannel};
    std::vector<std::uint64_t> observed(kBins, 0);
    for (std::uint64_t t = 0; t < n; ++t) {
        const double x = mc::sample_selected_snr(cfg, Scheme::ras, stream, t);
        const auto it = std::upper_bound(edges.begin(), edges.end(), x);
        observed[static_cast<std::size_t>(it - edges.begin())]++;
    }

    double stat = 0.0;
    for (int b = 0; b < kBins; ++b) {
        const double e = expected[static_cast<std::size_t>(b)] * static_cast<double>(n);
        const double o = static_cast<double>(observed[static_cast<std::size_t>(b)]);
        stat += (o - e) * (o - e) / e;
    }
    const double p = chi_square_sf(stat, kBins - 1);
    CheckResult chi;
    chi.name = "chi-square max-SNR K=" + std::to_string(K) + " L=" + std::to_string(L);
    chi.pass = p > 0.001;
    chi.detail = "statistic " + fmt(stat) + " (49 dof), p = " + fmt(p);
    out.push_back(std::move(chi));
}

ValidationReport criterion9(const ValidationOptions& opt) {
    ValidationReport report;
    for (int K = 1; K <= 4; ++K)
        for (int L = 1; L <= 4; ++L)
            check_distribution(report.checks, opt, K, L);
    return report;
}

ValidationReport criterion10(const ValidationOptions&) {
    ValidationReport report;

    // nonincreasing in theta
    {
        std::vector<double> thetas;
        for (int i = 0; i <= 20; ++i)
            thetas.push_back(1e-4 * std::pow(10.0, 5.0 * i / 20.0));  // 1e-4 .. 10
        const char* names[] = {"ras 3x3", "tas-optimal 2x2", "tas-constant 2x2", "joint 3x3"};
        for (int variant = 0; variant < 4; ++variant) {
            bool monotone = true;
            double prev = std::numeric_limits<double>::infinity();
            for (const double theta : thetas) {
                double ec = 0.0;
                if (variant == 0) {
                    ec = ras_effective_capacity(SystemConfig(3, 3, 10.0, theta));
                } else if (variant == 1) {
                    ec = tas_effective_capacity(SystemConfig(2, 2, 10.0, theta));
                } else if (variant == 2) {
                    ec = constant_power_effective_capacity(SystemConfig(2, 2, 10.0, theta));
                } else {
                    ec = tas_effective_capacity(
                        joint_selection_config(SystemConfig(3, 3, 10.0, theta)));
                }
                if (ec > prev * (1.0 + 1e-9) + 1e-9)
                    monotone = false;
                prev = ec;
            }
            CheckResult check;
            check.name = std::string("E_C nonincreasing in theta, ") + names[variant];
            check.pass = monotone;
            check.detail = "theta in [1e-4, 10], 21 log-spaced points at 10 dB";
            report.checks.push_back(std::move(check));
        }
    }

    // nondecreasing in gamma0
    {
        const char* names[] = {"ras 3x3", "tas-optimal 3x3"};
        for (int variant = 0; variant < 2; ++variant)
            for (const double theta : kThetaGrid) {
                bool monotone = true;
                double prev = -1.0;
                for (double db = 0.0; db <= 20.0; db += 2.0) {
                    const SystemConfig cfg(3, 3, db_to_linear(db), theta);
                    const double ec = variant == 0 ? ras_effective_capacity(cfg)
                                                   : tas_effective_capacity(cfg);
                    if (ec < prev * (1.0 - 1e-9) - 1e-9)
                        monotone = false;
                    prev = ec;
                }
                CheckResult check;
                check.name = std::string("E_C nondecreasing in SNR, ") + names[variant] +
                             " theta=" + fmt(theta);
                check.pass = monotone;
                check.detail = "0..20 dB in 2 dB steps";
                report.checks.push_back(std::move(check));
            }
    }

    // nondecreasing in the number of selection candidates
    {
        for (const double db : kSnrDbGrid)
            for (const double theta : kThetaGrid) {
                bool ras_monotone = true;
                double prev = -1.0;
                for (int mr = 1; mr <= 4; ++mr) {
                    const double ec =
                        ras_effective_capacity(SystemConfig(3, mr, db_to_linear(db), theta));
                    if (ec < prev * (1.0 - 1e-9) - 1e-9)
                        ras_monotone = false;
                    prev = ec;
                }
                CheckResult ras_check;
                ras_check.name = "E_C nondecreasing in mr, ras mt=3 " + fmt(db) +
                                 "dB theta=" + fmt(theta);
                ras_check.pass = ras_monotone;
                ras_check.detail = "mr = 1..4";
                report.checks.push_back(std::move(ras_check));

                bool tas_monotone = true;
                prev = -1.0;
                for (int mt = 1; mt <= 4; ++mt) {
                    const double ec =
                        tas_effective_capacity(SystemConfig(mt, 3, db_to_linear(db), theta));
                    if (ec < prev * (1.0 - 1e-9) - 1e-9)
                        tas_monotone = false;
                    prev = ec;
                }
                CheckResult tas_check;
                tas_check.name = "E_C nondecreasing in mt, tas mr=3 " + fmt(db) +
                                 "dB theta=" + fmt(theta);
                tas_check.pass = tas_monotone;
                tas_check.detail = "mt = 1..4";
                report.checks.push_back(std::move(tas_check));
            }
    }

    return report;
}

}  // namespace

ValidationReport run_criterion(int index, const ValidationOptions& opt) {
    switch (index) {
        case 1: return criterion1(opt);
        case 2: return criterion2(opt);
        case 3: return criterion3(opt);
        case 4: return criterion4(opt);
        case 5: return criterion5(opt);
        case 6: return criterion6(opt);
        case 7: return criterion7(opt);
        case 8: return criterion8(opt);
        case 9: return criterion9(opt);
        case 10: return criterion10(opt);
        default: throw std::invalid_argument("run_criterion: index must be 1..10");
    }
}

ValidationReport run_validation(const ValidationOptions& opt) {
    ValidationReport report;
    for (int i = 1; i <= 10; ++i) {
        ValidationReport part = run_criterion(i, opt);
        for (auto& check : part.checks)
            report.checks.push_back(std::move(check));
    }
    return report;
}

void write_report_text(std::ostream& out, const ValidationReport& report) {
    for (const CheckResult& check : report.checks)
        out << (check.pass ? "[PASS] " : "[FAIL] ") << check.name << " - " << check.detail
            << "\n";
    out << report.checks.size() - static_cast<std::size_t>(report.failures()) << "/"
        << report.checks.size() << " checks passed\n";
}

void write_report_json(std::ostream& out, const ValidationOptions& opt,
                       const ValidationReport& report) {
    nlohmann::ordered_json doc;
    doc["trials"] = opt.effective_trials();
    doc["seed"] = opt.seed;
    doc["quick"] = opt.quick;
    doc["all_pass"] = report.all_pass();
    doc["checks"] = nlohmann::ordered_json::array();
    for (const CheckResult& check : report.checks) {
        nlohmann::ordered_json j;
        j["name"] = check.name;
        j["pass"] = check.pass;
        j["detail"] = check.detail;
        doc["checks"].push_back(j);
    }
    out << doc.dump(2) << '\n';
}

}  // namespace ecap
