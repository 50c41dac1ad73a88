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

#ifndef ECAP_MONTECARLO_HPP
#define ECAP_MONTECARLO_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "ecap/philox.hpp"
#include "ecap/system_config.hpp"
#include "ecap/tas.hpp"

namespace ecap::mc {

enum class Scheme { ras, tas, joint };
enum class PowerMode { optimal, constant };

const char* to_string(Scheme s);
const char* to_string(PowerMode p);

// Stream salts: one per estimator so estimates sharing a seed stay
// independent. draw_channel/sample_selected_snr default to kSaltChannel.
inline constexpr std::uint64_t kSaltChannel = 0;
inline constexpr std::uint64_t kSaltEffectiveCapacity = 1;
inline constexpr std::uint64_t kSaltMeanMu = 2;
inline constexpr std::uint64_t kSaltErgodic = 3;

// One quasi-static channel realization: the mt x mr coefficient matrix
// (row-major, gains[i*mr + j] links transmit antenna i to receive antenna j)
// and the post-selection SNR for the given scheme.
struct ChannelDraw {
    int mt = 0;
    int mr = 0;
    std::vector<std::complex<double>> gains;
    double selected_snr = 0.0;
};

ChannelDraw draw_channel(const SystemConfig& cfg, Scheme scheme, const RngStream& stream,
                         std::uint64_t trial_index);

// Post-selection SNR only:
//   ras:   max over mr receive antennas of gamma0 * sum_i |h_ij|^2
//   tas:   max over mt transmit antennas of gamma0 * sum_j |h_ij|^2
//   joint: max over all mt*mr single links of gamma0 * |h_ij|^2
double sample_selected_snr(const SystemConfig& cfg, Scheme scheme, const RngStream& stream,
                           std::uint64_t trial_index);

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
};

// Effective capacity -(1/theta) ln(mean of e^{-theta R}) with a
// delta-method standard error on the log transform. R is the per-frame
// service rate of the scheme; `policy` is required for optimal power and
// ignored otherwise. Bit-identical for a fixed seed, for any `jobs`.
McEstimate mc_effective_capacity(const SystemConfig& cfg, Scheme scheme, PowerMode power,
                                 std::uint64_t n, std::uint64_t seed,
                                 const PowerPolicy* policy = nullptr, int jobs = 1);

// Same estimator over caller-provided per-trial rates; lets tests feed
// degenerate channels.
McEstimate mc_effective_capacity_from_rates(const std::function<double(std::uint64_t)>& rate,
                                            double theta, std::uint64_t n, std::uint64_t seed,
                                            int jobs = 1);

// Sample mean of mu(selected snr) under a solved policy.
McEstimate mc_mean_mu(const SystemConfig& cfg, Scheme scheme, const PowerPolicy& policy,
                      std::uint64_t n, std::uint64_t seed, int jobs = 1);

// Sample mean of the service rate itself (the ergodic rate when the policy
// is the water-filling one).
McEstimate mc_mean_rate(const SystemConfig& cfg, Scheme scheme, PowerMode power,
                        std::uint64_t n, std::uint64_t seed, const PowerPolicy* policy = nullptr,
                        int jobs = 1);

// Sample mean of an arbitrary per-trial statistic of the selected SNR.
McEstimate mc_mean_statistic(const SystemConfig& cfg, Scheme scheme,
                             const std::function<double(double)>& statistic, std::uint64_t n,
                             std::uint64_t seed, std::uint64_t salt, int jobs = 1);

}  // namespace ecap::mc

#endif
