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

#ifndef ECAP_ORDERSTATS_HPP
#define ECAP_ORDERSTATS_HPP

#include <span>
#include <vector>

#include "ecap/summation.hpp"

namespace ecap {

// Antenna geometries above this lose enough digits in the alternating-sign
// order-statistic expansion that results should not be trusted blindly.
inline constexpr int kMaxSupportedAntennas = 8;

// SNR law of one candidate branch: the sum of k unit-mean exponential gains
// scaled by the linear average SNR gamma0. A gamma distribution with integer
// shape k and scale gamma0.
struct BranchSnrDist {
    int k;
    double gamma0;

    BranchSnrDist(int k_, double gamma0_);
};

// Coefficients c_q^(m) of the expansion
//
//   (sum_{j=0}^{k-1} x^j / (gamma0^j j!))^m  =  sum_{q=0}^{m(k-1)} c_q^(m) x^q,
//
// built by repeated discrete convolution of the m = 1 row with itself.
// Row m has exactly m(k-1)+1 entries; row 0 is [1].
class CoefficientTable {
  public:
    CoefficientTable(const BranchSnrDist& dist, int m_max);

    int m_max() const { return static_cast<int>(rows_.size()) - 1; }
    int k() const { return k_; }
    double gamma0() const { return gamma0_; }
    std::span<const double> row(int m) const;
    double coeff(int m, int q) const { return row(m)[static_cast<std::size_t>(q)]; }

  private:
    int k_;
    double gamma0_;
    std::vector<std::vector<double>> rows_;
};

// One selection instance: the largest of num_candidates i.i.d. branch SNRs.
struct SelectionConfig {
    int num_candidates;  // L
    BranchSnrDist branch;

    SelectionConfig(int num_candidates_, BranchSnrDist branch_);
};

// Gamma density x^{k-1} e^{-x/gamma0} / (gamma0^k Gamma(k)), x >= 0.
double snr_pdf(const BranchSnrDist& dist, double x);

// CDF via the regularized lower incomplete gamma.
double snr_cdf(const BranchSnrDist& dist, double x);

// Same CDF through the finite sum 1 - e^{-x/g0} sum_{j<k} x^j/(g0^j j!),
// available because k is integer. Kept as an independent route for tests.
double snr_cdf_finite_sum(const BranchSnrDist& dist, double x);

CoefficientTable build_coefficients(const BranchSnrDist& dist, int m_max);

// Density of the selected (largest) SNR in its expanded form
//
//   L/(gamma0^k Gamma(k)) sum_m C(L-1,m) (-1)^m sum_q c_q^(m)
//                         x^{q+k-1} e^{-(m+1)x/gamma0}.
//
// `table` must have been built from sel.branch with m_max = L-1.
double max_order_pdf(const SelectionConfig& sel, const CoefficientTable& table, double x,
                     EvalDiagnostics* diag = nullptr);

// Direct form L F(x)^{L-1} f(x) of the same density.
double max_order_pdf_direct(const SelectionConfig& sel, double x);

// Density of the l-th order statistic (1 = smallest, L = largest).
double general_order_pdf(const SelectionConfig& sel, int l, double x);

// C(n, r) for small integer arguments, exact in double.
double binomial(int n, int r);

}  // namespace ecap

#endif
