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

namespace delayswitch {

/// F(x) = x^3 + c2 x^2 + c1 x + c0 with F(omega^2) = |P(i omega)|^2 - |Q(i omega)|^2.
/// Positive roots are the squared frequencies at which W can have a purely
/// imaginary root for some delay.
struct AmplitudeCubic {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;
  double discriminant = 0.0;

  double operator()(double x) const noexcept { return ((x + c2) * x + c1) * x + c0; }
  double derivative(double x) const noexcept { return (3.0 * x + 2.0 * c2) * x + c1; }
  /// Magnitude scale of the roots: max(|c2|, |c1|^(1/2), |c0|^(1/3)).
  double root_scale() const noexcept;
};

AmplitudeCubic amplitude_polynomial(const QuasiPolynomial& qp);

enum class Direction {
  Stabilizing,    // F'(x) < 0: a root pair crosses right to left as tau grows
  Destabilizing,  // F'(x) > 0: a root pair crosses left to right
};

const char* to_string(Direction d) noexcept;

struct CrossingFrequency {
  double x = 0.0;
  double omega = 0.0;
  Direction direction = Direction::Destabilizing;
  double slope = 0.0;  // F'(x)
  /// Phase in [0, 2 pi) with omega * tau = alpha (mod 2 pi) at a crossing.
  /// Unset until resolved against a quasi-polynomial.
  std::optional<double> alpha;
};

struct SwitchOptions {
  double discriminant_rel_tol = 1e-10;
  double slope_rel_tol = 1e-9;
  double tie_tol = 1e-9;
  double division_tol = 1e-12;
};

/// Strictly positive roots of F, ascending in omega, with crossing direction.
/// Throws ErrorKind::Degenerate when the discriminant or F' at a root is at
/// noise level.
std::vector<CrossingFrequency> crossing_frequencies(const AmplitudeCubic& f,
                                                    const SwitchOptions& opts = {});

/// Phase alpha in [0, 2 pi) solving e^{-i omega tau} = -P(i omega) / Q(i omega).
double crossing_phase(const QuasiPolynomial& qp, const CrossingFrequency& cf,
                      const SwitchOptions& opts = {});

/// tau_{j,n} = alpha/omega + 2 pi n / omega for n = 0..n_max.
std::vector<double> critical_delays(const QuasiPolynomial& qp,
                                    const CrossingFrequency& cf, int n_max,
                                    const SwitchOptions& opts = {});

struct SwitchEvent {
  double tau = 0.0;
  int delta = 0;   // -2 stabilizing, +2 destabilizing
  int source = 0;  // 1-based index into the crossing list (ascending omega)
  int n = 0;       // position in the arithmetic series
};

struct Window {
  double lo = 0.0;
  double hi = 0.0;
};

struct SwitchSchedule {
  std::vector<CrossingFrequency> crossings;  // alpha resolved
  std::vector<SwitchEvent> events;           // ascending tau
  int n_at_zero = 0;
  std::vector<Window> windows;  // open intervals with N(tau) = 0
  double tau_max = 0.0;

  /// N(tau): right-half-plane root count after all events strictly below tau.
  int count_at(double tau) const noexcept;
};

/// Merges every critical-delay series up to tau_max into the step function
/// N(tau). Requires F(0) > 0, i.e. |a0| > |b0|.
SwitchSchedule schedule(const QuasiPolynomial& qp, double tau_max,
                        const SwitchOptions& opts = {});

}  // namespace delayswitch
