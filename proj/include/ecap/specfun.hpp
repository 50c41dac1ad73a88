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

#ifndef ECAP_SPECFUN_HPP
#define ECAP_SPECFUN_HPP

#include "ecap/quadrature.hpp"

namespace ecap::specfun {

// ln Gamma(x) for x > 0.
double ln_gamma(double x);

// Gamma(x) for x > 0 (overflows to +inf past x ~ 171.6).
double gamma_fn(double x);

// Regularized incomplete gamma pair: P(a,x) = gamma(a,x)/Gamma(a) and
// Q(a,x) = Gamma(a,x)/Gamma(a). Series for x < a+1, continued fraction
// otherwise. a > 0, x >= 0.
double reg_lower_gamma(double a, double x);
double reg_upper_gamma(double a, double x);

// Unregularized lower/upper incomplete gamma functions.
double lower_inc_gamma(double a, double x);
double upper_inc_gamma(double a, double x);

// ln of the unregularized incomplete gammas, stable where the plain value
// would underflow (e.g. ln gamma(a,x) for x^a far below double range).
// ln_lower_inc_gamma requires x > 0; ln_upper_inc_gamma accepts x >= 0.
double ln_lower_inc_gamma(double a, double x);
double ln_upper_inc_gamma(double a, double x);

// Exponential integral E1(x) = int_x^inf exp(-t)/t dt for x > 0,
// and its logarithm (usable past the underflow point of E1 itself).
double exp_integral_e1(double x);
double ln_exp_integral_e1(double x);

// e^x E1(x), stable for large x where e^x and E1(x) separately over/underflow.
double exp_scaled_e1(double x);

// Exponential integral Ei(x) for x < 0 only; Ei(x) = -E1(-x) there.
double exp_integral_ei(double x);

// Tricomi confluent hypergeometric function of the second kind,
//
//   psi(a,b;z) = 1/Gamma(a) * int_0^inf exp(-z t) t^(a-1) (1+t)^(b-a-1) dt,
//
// for a > 0, z > 0, b unrestricted, evaluated by adaptive quadrature on the
// integral representation. The t -> 0 endpoint singularity for a < 1 is
// removed by the substitution t = u^(1/a); the tail is truncated once the
// integrand falls below the spec's absolute floor relative to its peak.
// Throws ConvergenceError if the subdivision budget is exhausted.
double tricomi_u(double a, double b, double z, const QuadratureSpec& spec = {});

// ln psi(a,b;z); the form the alternating closed-form sums consume.
double ln_tricomi_u(double a, double b, double z, const QuadratureSpec& spec = {});

}  // namespace ecap::specfun

#endif
