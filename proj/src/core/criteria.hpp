/*
 * Copyright 2026 The delayswitch Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <optional>
#include <vector>

#include "charpoly.hpp"
#include "polynomial.hpp"
#include "switches.hpp"

namespace delayswitch {

/// Outcome of the sufficient-condition check for stability at a given delay.
struct TheoremReport {
  bool b0_condition = false;  // 0 > b0 > -a0
  bool a1_condition = false;  // a1 < 0
  bool a2_condition = false;  // a2 > a1^2 / (2|b0|)
  bool b_small = false;       // b1 = b2 = 0
  bool below_upper = false;   // tau_bar < tau_upper
  bool witness_found = false;
  std::optional<double> omega_bar;
  std::optional<double> tau_bar;  // set when passed
  double tau_upper = 0.0;         // sqrt(2 a2 / |b0|), 0 when undefined
  double min_wi = 0.0;            // min W_i over the confirmation grid
  bool passed = false;
};

struct TheoremOptions {
  double search_start = 1e-4;
  double search_ratio = 1.001;
  int confirm_points = 10000;
  double wi_margin = 1e-8;
};

/// Sign conditions, the delay threshold, and a numerical witness omega_bar
/// with W_r(omega_bar) < 0 and W_i > 0 on (0, omega_bar).
/// Requires b1 = b2 = 0 (ErrorKind::Unsupported otherwise).
TheoremReport check_theorem(const QuasiPolynomial& qp, double tau_bar,
                            const TheoremOptions& opts = {});

/// g(tau) = g3 tau^3 + g2 tau^2 + g1 tau + g0.
struct CorollaryCubic {
  double g3 = 0.0;
  double g2 = 0.0;
  double g1 = 0.0;
  double g0 = 0.0;

  double operator()(double tau) const noexcept { return ((g3 * tau + g2) * tau + g1) * tau + g0; }
  Polynomial polynomial() const { return Polynomial{g0, g1, g2, g3}; }
};

/// Plain coefficient assembly; b0 must be nonzero.
CorollaryCubic corollary_coefficients(double a0, double a1, double a2, double b0);

/// Corollary cubic, gated on 0 > b0 > -a0, a1 < 0 and a2 > a1^2/(2|b0|).
/// A violated inequality raises ErrorKind::Precondition naming it.
CorollaryCubic corollary_g(const QuasiPolynomial& qp);

/// Distinct real roots of poly in (lo, hi) by Sturm's theorem.
int sturm_count(const Polynomial& poly, double lo, double hi);

/// Distinct real roots in (lo, hi), isolated by Sturm bisection.
std::vector<double> sturm_roots(const Polynomial& poly, double lo, double hi,
                                double tol = 1e-13);

struct CorollaryReport {
  bool hypotheses = false;
  bool passed = false;
  std::optional<CorollaryCubic> g;
  double tau_upper = 0.0;
  std::vector<double> roots;               // roots of g in (0, tau_upper)
  std::optional<Window> stable_tau_interval;  // where g < 0
};

/// Requires b1 = b2 = 0 (ErrorKind::Unsupported otherwise).
CorollaryReport check_corollary(const QuasiPolynomial& qp);

/// a1 / b0: any delay admitting a witness must exceed it.
double remark_lower_bound(const QuasiPolynomial& qp);

}  // namespace delayswitch
