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

#include "ecap/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace ecap::mc {

const char* to_string(Scheme s) {
    switch (s) {
        case Scheme::ras: return "ras";
        case Scheme::tas: return "tas";
        case Scheme::joint: return "joint";
    }
    return "?";
}

const char* to_string(PowerMode p) {
    return p == PowerMode::optimal ? "optimal" : "constant";
}

namespace {

// Welford accumulator plus the Chan et al. pairwise merge. Trials are
// grouped into fixed-size chunks keyed by trial index, each chunk is
// accumulated sequentially, and chunk results are merged along a fixed
// binary tree, so the result does not depend on the number of workers.
struct MomentAccum {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }
};

MomentAccum merge(const MomentAccum& a, const MomentAccum& b) {
    if (a.n == 0)
        return b;
    if (b.n == 0)
        return a;
    MomentAccum out;
    out.n = a.n + b.n;
    const double delta = b.mean - a.mean;
    const double nb_over_n = static_cast<double>(b.n) / static_cast<double>(out.n);
    out.mean = a.mean + delta * nb_over_n;
    out.m2 = a.m2 + b.m2 + delta * delta * static_cast<double>(a.n) * nb_over_n;
    return out;
}

MomentAccum merge_tree(const std::vector<MomentAccum>& chunks, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1)
        return chunks[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return merge(merge_tree(chunks, lo, mid), merge_tree(chunks, mid, hi));
}

constexpr std::uint64_t kChunkSize = 1 << 16;

template <class SampleFn>
MomentAccum accumulate(std::uint64_t n, int jobs, SampleFn&& sample) {
    if (n == 0)
        throw std::invalid_argument("monte carlo: trial count must be >= 1");
    const std::size_t num_chunks = static_cast<std::size_t>((n + kChunkSize - 1) / kChunkSize);
    std::vector<MomentAccum> chunks(num_chunks);

    auto run_chunk = [&](std::size_t chunk) {
        const std::uint64_t begin = static_cast<std::uint64_t>(chunk) * kChunkSize;
        const std::uint64_t end = std::min(begin + kChunkSize, n);
        MomentAccum acc;
        for (std::uint64_t t = begin; t < end; ++t)
            acc.add(sample(t));
        chunks[chunk] = acc;
    };

    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(num_chunks)));
    if (workers == 1) {
        for (std::size_t chunk = 0; chunk < num_chunks; ++chunk)
            run_chunk(chunk);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t chunk = next.fetch_add(1); chunk < num_chunks;
                     chunk = next.fetch_add(1))
                    run_chunk(chunk);
            });
        for (auto& th : pool)
            th.join();
    }
    return merge_tree(chunks, 0, num_chunks);
}

McEstimate to_estimate(const MomentAccum& acc, std::uint64_t seed) {
    McEstimate est;
    est.n = acc.n;
    est.seed = seed;
    est.mean = acc.mean;
    const double variance = acc.n > 1 ? acc.m2 / static_cast<double>(acc.n - 1) : 0.0;
    est.std_error = std::sqrt(variance / static_cast<double>(acc.n));
    return est;
}

double selected_snr_from_gains(const SystemConfig& cfg, Scheme scheme,
                               const std::complex<double>* gains) {
    const int mt = cfg.mt;
    const int mr = cfg.mr;
    double best = 0.0;
    switch (scheme) {
        case Scheme::ras:
            // candidate j: receive antenna j sees all mt transmitters
            for (int j = 0; j < mr; ++j) {
                double s = 0.0;
                for (int i = 0; i < mt; ++i)
                    s += std::norm(gains[static_cast<std::size_t>(i) * mr + j]);
                best = std::max(best, s);
            }
            break;
        case Scheme::tas:
            // candidate i: transmit antenna i feeds all mr receivers
            for (int i = 0; i < mt; ++i) {
                double s = 0.0;
                for (int j = 0; j < mr; ++j)
                    s += std::norm(gains[static_cast<std::size_t>(i) * mr + j]);
                best = std::max(best, s);
            }
            break;
        case Scheme::joint:
            for (int idx = 0; idx < mt * mr; ++idx)
                best = std::max(best, std::norm(gains[static_cast<std::size_t>(idx)]));
            break;
    }
    return cfg.gamma0 * best;
}

// Fills `gains` (mt*mr entries) for one trial and returns the selected SNR.
double draw_into(const SystemConfig& cfg, Scheme scheme, const RngStream& stream,
                 std::uint64_t trial_index, std::complex<double>* gains) {
    const std::uint64_t coeffs = static_cast<std::uint64_t>(cfg.mt) * cfg.mr;
    const std::uint64_t base = trial_index * coeffs;
    for (std::uint64_t c = 0; c < coeffs; ++c)
        gains[c] = stream.complex_gaussian(base + c);
    return selected_snr_from_gains(cfg, scheme, gains);
}

constexpr int kMaxGains = 64;

void check_gain_budget(const SystemConfig& cfg) {
    if (cfg.mt * cfg.mr > kMaxGains)
        throw std::invalid_argument("monte carlo: mt*mr exceeds the supported antenna budget");
}

}  // namespace

ChannelDraw draw_channel(const SystemConfig& cfg, Scheme scheme, const RngStream& stream,
                         std::uint64_t trial_index) {
    ChannelDraw draw;
    draw.mt = cfg.mt;
    draw.mr = cfg.mr;
    draw.gains.resize(static_cast<std::size_t>(cfg.mt) * cfg.mr);
    draw.selected_snr = draw_into(cfg, scheme, stream, trial_index, draw.gains.data());
    return draw;
}

double sample_selected_snr(const SystemConfig& cfg, Scheme scheme, const RngStream& stream,
                           std::uint64_t trial_index) {
    check_gain_budget(cfg);
    std::complex<double> gains[kMaxGains];
    return draw_into(cfg, scheme, stream, trial_index, gains);
}

McEstimate mc_effective_capacity(const SystemConfig& cfg, Scheme scheme, PowerMode power,
                                 std::uint64_t n, std::uint64_t seed, const PowerPolicy* policy,
                                 int jobs) {
    check_gain_budget(cfg);
    if (scheme != Scheme::ras && power == PowerMode::optimal && policy == nullptr)
        throw std::invalid_argument("mc_effective_capacity: optimal power needs a solved policy");

    const RngStream stream{seed, kSaltEffectiveCapacity};
    const double theta = cfg.theta;
    const double bt_over_ln2 = cfg.bt() / std::numbers::ln2;
    const bool miso_rate = (scheme == Scheme::ras);
    const double mt_split = static_cast<double>(cfg.mt);

    auto sample = [&, policy](std::uint64_t t) {
        std::complex<double> gains[kMaxGains];
        const double snr = draw_into(cfg, scheme, stream, t, gains);
        double rate;
        if (miso_rate)
            rate = bt_over_ln2 * std::log1p(snr / mt_split);
        else if (power == PowerMode::optimal)
            rate = bt_over_ln2 * std::log1p(mu_coefficient(*policy, snr) * snr);
        else
            rate = bt_over_ln2 * std::log1p(snr);
        return std::exp(-theta * rate);
    };

    const MomentAccum acc = accumulate(n, jobs, sample);
    McEstimate est = to_estimate(acc, seed);
    const double mean_s = est.mean;
    const double se_s = est.std_error;
    est.mean = -std::log(mean_s) / theta;
    est.std_error = se_s / (theta * mean_s);
    return est;
}

McEstimate mc_effective_capacity_from_rates(const std::function<double(std::uint64_t)>& rate,
                                            double theta, std::uint64_t n, std::uint64_t seed,
                                            int jobs) {
    if (!(theta > 0.0))
        throw std::invalid_argument("mc_effective_capacity_from_rates: theta must be > 0");
    const MomentAccum acc =
        accumulate(n, jobs, [&](std::uint64_t t) { return std::exp(-theta * rate(t)); });
    McEstimate est = to_estimate(acc, seed);
    const double mean_s = est.mean;
    const double se_s = est.std_error;
    est.mean = -std::log(mean_s) / theta;
    est.std_error = se_s / (theta * mean_s);
    return est;
}

McEstimate mc_mean_mu(const SystemConfig& cfg, Scheme scheme, const PowerPolicy& policy,
                      std::uint64_t n, std::uint64_t seed, int jobs) {
    check_gain_budget(cfg);
    const RngStream stream{seed, kSaltMeanMu};
    auto sample = [&](std::uint64_t t) {
        std::complex<double> gains[kMaxGains];
        const double snr = draw_into(cfg, scheme, stream, t, gains);
        return mu_coefficient(policy, snr);
    };
    return to_estimate(accumulate(n, jobs, sample), seed);
}

McEstimate mc_mean_rate(const SystemConfig& cfg, Scheme scheme, PowerMode power, std::uint64_t n,
                        std::uint64_t seed, const PowerPolicy* policy, int jobs) {
    check_gain_budget(cfg);
    if (scheme != Scheme::ras && power == PowerMode::optimal && policy == nullptr)
        throw std::invalid_argument("mc_mean_rate: optimal power needs a solved policy");
    const RngStream stream{seed, kSaltErgodic};
    const double bt_over_ln2 = cfg.bt() / std::numbers::ln2;
    const bool miso_rate = (scheme == Scheme::ras);
    auto sample = [&, policy](std::uint64_t t) {
        std::complex<double> gains[kMaxGains];
        const double snr = draw_into(cfg, scheme, stream, t, gains);
        if (miso_rate)
            return bt_over_ln2 * std::log1p(snr / cfg.mt);
        if (power == PowerMode::optimal)
            return bt_over_ln2 * std::log1p(mu_coefficient(*policy, snr) * snr);
        return bt_over_ln2 * std::log1p(snr);
    };
    return to_estimate(accumulate(n, jobs, sample), seed);
}

McEstimate mc_mean_statistic(const SystemConfig& cfg, Scheme scheme,
                             const std::function<double(double)>& statistic, std::uint64_t n,
                             std::uint64_t seed, std::uint64_t salt, int jobs) {
    check_gain_budget(cfg);
    const RngStream stream{seed, salt};
    auto sample = [&](std::uint64_t t) {
        std::complex<double> gains[kMaxGains];
        return statistic(draw_into(cfg, scheme, stream, t, gains));
    };
    return to_estimate(accumulate(n, jobs, sample), seed);
}

}  // namespace ecap::mc
