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

#ifndef ECAP_SUMMATION_HPP
#define ECAP_SUMMATION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace ecap {

// Ratio of largest partial magnitude to final magnitude beyond which an
// alternating sum is reported as cancellation-degraded.
inline constexpr double kCancellationWarnRatio = 1e6;

struct EvalDiagnostics {
    double cancellation_ratio = 1.0;
    bool cancellation_warning = false;

    void record(double ratio) {
        cancellation_ratio = std::max(cancellation_ratio, ratio);
        if (cancellation_ratio > kCancellationWarnRatio)
            cancellation_warning = true;
    }
};

// Neumaier-compensated accumulator. Also tracks the largest partial
// magnitude so callers can estimate how many digits an alternating sum
// lost to cancellation.
class CompensatedSum {
  public:
    void add(double term) {
        const double t = sum_ + term;
        if (std::abs(sum_) >= std::abs(term))
            comp_ += (sum_ - t) + term;
        else
            comp_ += (term - t) + sum_;
        sum_ = t;
        peak_ = std::max({peak_, std::abs(term), std::abs(t)});
    }

    double value() const { return sum_ + comp_; }
    double peak_magnitude() const { return peak_; }

    double cancellation_ratio() const {
        const double v = std::abs(value());
        if (peak_ == 0.0)
            return 1.0;
        if (v == 0.0)
            return std::numeric_limits<double>::infinity();
        return peak_ / v;
    }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    double peak_ = 0.0;
};

// Alternating sum whose terms arrive as (sign, ln|term|) pairs. The terms
// are rescaled against the largest magnitude before combining, so inputs
// far outside the range of double still cancel correctly.
class SignedLogSum {
  public:
    void add(int sign, double ln_magnitude) {
        if (std::isinf(ln_magnitude) && ln_magnitude < 0.0)
            return;  // exact zero term
        terms_.emplace_back(ln_magnitude, sign);
    }

    double value() const {
        if (terms_.empty())
            return 0.0;
        const double scale = peak_ln();
        const double s = scaled_sum(scale);
        if (s == 0.0)
            return 0.0;
        // exp(scale)*s, routed through ln-space when exp(scale) alone overflows
        if (scale > 700.0)
            return std::copysign(std::exp(scale + std::log(std::abs(s))), s);
        return std::exp(scale) * s;
    }

    // ln|sum| and the sign of the sum; finite even where value() would
    // underflow or overflow.
    double ln_abs_value() const {
        if (terms_.empty())
            return -std::numeric_limits<double>::infinity();
        const double scale = peak_ln();
        const double s = scaled_sum(scale);
        if (s == 0.0)
            return -std::numeric_limits<double>::infinity();
        return scale + std::log(std::abs(s));
    }

    int sign() const {
        if (terms_.empty())
            return 0;
        const double s = scaled_sum(peak_ln());
        return (s > 0.0) - (s < 0.0);
    }

    // max |term| / |sum|, computed in the rescaled space
    double cancellation_ratio() const {
        if (terms_.empty())
            return 1.0;
        const double s = std::abs(scaled_sum(peak_ln()));
        if (s == 0.0)
            return std::numeric_limits<double>::infinity();
        return 1.0 / s;
    }

    std::size_t size() const { return terms_.size(); }

  private:
    double peak_ln() const {
        double m = -std::numeric_limits<double>::infinity();
        for (const auto& t : terms_)
            m = std::max(m, t.first);
        return m;
    }

    double scaled_sum(double scale) const {
        CompensatedSum acc;
        for (const auto& [ln_mag, sign] : terms_)
            acc.add(static_cast<double>(sign) * std::exp(ln_mag - scale));
        return acc.value();
    }

    std::vector<std::pair<double, int>> terms_;
};

}  // namespace ecap

#endif
