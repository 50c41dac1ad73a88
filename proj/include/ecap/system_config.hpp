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

#ifndef ECAP_SYSTEM_CONFIG_HPP
#define ECAP_SYSTEM_CONFIG_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ecap {

// Full experiment parameterization of one link. Rates are carried in bits
// per frame internally; divide by bt() for the bits/s/Hz presentation.
struct SystemConfig {
    int mt;               // transmit antennas
    int mr;               // receive antennas
    double bandwidth_hz;  // B
    double frame_s;       // T
    double gamma0;        // linear-scale average SNR
    double theta;         // QoS exponent, 1/bits

    SystemConfig(int mt_, int mr_, double gamma0_, double theta_, double bandwidth_hz_ = 100e3,
                 double frame_s_ = 1e-3)
        : mt(mt_), mr(mr_), bandwidth_hz(bandwidth_hz_), frame_s(frame_s_), gamma0(gamma0_),
          theta(theta_) {
        if (mt < 1 || mr < 1)
            throw std::invalid_argument("SystemConfig: antenna counts must be >= 1");
        if (!(bandwidth_hz > 0.0) || !(frame_s > 0.0))
            throw std::invalid_argument("SystemConfig: bandwidth and frame time must be > 0");
        if (!(gamma0 > 0.0))
            throw std::invalid_argument("SystemConfig: gamma0 must be > 0");
        if (!(theta > 0.0))
            throw std::invalid_argument("SystemConfig: theta must be > 0");
    }

    double bt() const { return bandwidth_hz * frame_s; }
    double theta_tilde() const { return theta * bt() / std::numbers::ln2; }

    // bits per frame -> bits/s/Hz
    double normalized(double bits_per_frame) const { return bits_per_frame / bt(); }
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace ecap

#endif
