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

#ifndef ECAP_PHILOX_HPP
#define ECAP_PHILOX_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace ecap::mc {

// Philox4x32-10 counter-based generator (Salmon et al., the Random123
// parameterization). A pure function from (counter, key) to four 32-bit
// words: no state, so any trial index can be generated on any thread and
// the stream is identical regardless of how work is partitioned.
struct Philox4x32 {
    static constexpr std::uint32_t kMult0 = 0xD2511F53u;
    static constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t prod0 = static_cast<std::uint64_t>(kMult0) * ctr[0];
            const std::uint64_t prod1 = static_cast<std::uint64_t>(kMult1) * ctr[2];
            const std::uint32_t hi0 = static_cast<std::uint32_t>(prod0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(prod0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(prod1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(prod1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        return ctr;
    }
};

// One logical random stream: (seed, salt) select the stream, the block
// index selects the position within it. Distinct salts keep estimators that
// share a seed statistically independent.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t salt = 0;

    std::array<std::uint32_t, 4> block(std::uint64_t index) const {
        const std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
            static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32)};
        const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed),
                                                  static_cast<std::uint32_t>(seed >> 32)};
        return Philox4x32::block(ctr, key);
    }

    // Circularly-symmetric standard complex Gaussian, E|h|^2 = 1, from one
    // Philox block via Box-Muller. u1 is kept strictly positive so the log
    // is finite.
    std::complex<double> complex_gaussian(std::uint64_t index) const {
        const auto w = block(index);
        const std::uint64_t bits1 =
            (static_cast<std::uint64_t>(w[0]) << 32) | w[1];
        const std::uint64_t bits2 =
            (static_cast<std::uint64_t>(w[2]) << 32) | w[3];
        const double u1 = (static_cast<double>(bits1 >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(bits2 >> 11) * 0x1.0p-53;
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        // the 1/sqrt(2) split puts unit mean power on |h|^2
        return {radius * std::cos(angle) * std::numbers::sqrt2 / 2.0,
                radius * std::sin(angle) * std::numbers::sqrt2 / 2.0};
    }
};

}  // namespace ecap::mc

#endif
