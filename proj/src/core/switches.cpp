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

#include "switches.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "errors.hpp"
#include "polynomial.hpp"

namespace delayswitch {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

double AmplitudeCubic::root_scale() const noexcept {
  return std::max({std::abs(c2), std::sqrt(std::abs(c1)), std::cbrt(std::abs(c0))});
}

const char* to_string(Direction d) noexcept {
  return d == Direction::Stabilizing ? "stabilizing" : "destabilizing";
}

AmplitudeCubic amplitude_polynomial(const QuasiPolynomial& qp) {
  const double a0 = qp.a0(), a1 = qp.a1(), a2 = qp.a2();
  const double b0 = qp.b0(), b1 = qp.b1(), b2 = qp.b2();
  AmplitudeCubic f;
  f.c2 = a2 * a2 - 2.0 * a1 - b2 * b2;
  // |Q(iw)|^2 = (b0 - b2 w^2)^2 + b1^2 w^2 contributes +2 b0 b2 to c1.
  f.c1 = a1 * a1 - 2.0 * a0 * a2 - b1 * b1 + 2.0 * b0 * b2;
  f.c0 = a0 * a0 - b0 * b0;
  f.discriminant = monic_cubic_discriminant(f.c2, f.c1, f.c0);
  return f;
}

std::vector<CrossingFrequency> crossing_frequencies(const AmplitudeCubic& f,
                                                    const SwitchOptions& opts) {
  const double scale = f.root_scale();
  if (std::abs(f.discriminant) <= opts.discriminant_rel_tol * std::pow(scale, 6)) {
    std::ostringstream msg;
    msg << "amplitude cubic has a (near) repeated root: discriminant "
        << f.discriminant;
    fail(ErrorKind::Degenerate, msg.str());
  }
  std::vector<CrossingFrequency> out;
  for (double x : solve_monic_cubic(f.c2, f.c1, f.c0)) {
    if (!(x > 0.0)) continue;
    const double slope = f.derivative(x);
    const double slope_scale =
        3.0 * x * x + 2.0 * std::abs(f.c2) * x + std::abs(f.c1);
    if (std::abs(slope) <= opts.slope_rel_tol * slope_scale) {
      std::ostringstream msg;
      msg << "F'(x) vanishes at the positive root x = " << x
          << "; crossing direction undefined";
      fail(ErrorKind::Degenerate, msg.str());
    }
    CrossingFrequency cf;
    cf.x = x;
    cf.omega = std::sqrt(x);
    cf.slope = slope;
    cf.direction = slope < 0.0 ? Direction::Stabilizing : Direction::Destabilizing;
    out.push_back(cf);
  }
  return out;
}

double crossing_phase(const QuasiPolynomial& qp, const CrossingFrequency& cf,
                      const SwitchOptions& opts) {
  const Complex iw{0.0, cf.omega};
  const Complex q = qp.q(iw);
  if (std::abs(q) < opts.division_tol) {
    std::ostringstream msg;
    msg << "|Q(i omega)| = " << std::abs(q) << " at omega = " << cf.omega
        << "; cannot solve for the delay phase";
    fail(ErrorKind::Division, msg.str());
  }
  // e^{-i w tau} = cos(w tau) - i sin(w tau)
  const Complex rotation = -qp.p(iw) / q;
  double alpha = std::atan2(-rotation.imag(), rotation.real());
  if (alpha < 0.0) alpha += kTwoPi;
  if (alpha >= kTwoPi) alpha -= kTwoPi;
  return alpha;
}

std::vector<double> critical_delays(const QuasiPolynomial& qp,
                                    const CrossingFrequency& cf, int n_max,
                                    const SwitchOptions& opts) {
  if (n_max < 0) fail(ErrorKind::Domain, "n_max must be non-negative");
  if (!(cf.omega > 0.0)) fail(ErrorKind::Domain, "crossing frequency must be positive");
  const double alpha = cf.alpha ? *cf.alpha : crossing_phase(qp, cf, opts);
  std::vector<double> taus;
  taus.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    taus.push_back(alpha / cf.omega + kTwoPi * n / cf.omega);
  }
  const Complex iw{0.0, cf.omega};
  const double tol = 1e-8 * std::max(1.0, std::abs(qp.p(iw)));
  for (double tau : taus) {
    if (std::abs(eval(qp, iw, tau)) >= tol) {
      std::ostringstream msg;
      msg << "critical delay " << tau << " does not annihilate W(i omega)";
      fail(ErrorKind::Internal, msg.str());
    }
  }
  return taus;
}

int SwitchSchedule::count_at(double tau) const noexcept {
  int n = n_at_zero;
  for (const auto& e : events) {
    if (e.tau < tau) n += e.delta;
  }
  return n;
}

SwitchSchedule schedule(const QuasiPolynomial& qp, double tau_max,
                        const SwitchOptions& opts) {
  if (!std::isfinite(tau_max) || !(tau_max > 0.0)) {
    fail(ErrorKind::Domain, "tau_max must be positive and finite");
  }
  SwitchSchedule s;
  s.tau_max = tau_max;
  s.n_at_zero = rhp_count_zero_delay(qp);

  const AmplitudeCubic f = amplitude_polynomial(qp);
  if (!(f.c0 > 0.0)) {
    std::ostringstream msg;
    msg << "F(0) = a0^2 - b0^2 = " << f.c0
        << " <= 0; switch scheduling requires |a0| > |b0|";
    fail(ErrorKind::Precondition, msg.str());
  }
  s.crossings = crossing_frequencies(f, opts);

  for (std::size_t j = 0; j < s.crossings.size(); ++j) {
    auto& cf = s.crossings[j];
    cf.alpha = crossing_phase(qp, cf, opts);
    const int delta = cf.direction == Direction::Stabilizing ? -2 : 2;
    const double first = *cf.alpha / cf.omega;
    if (first > tau_max) continue;
    const int n_max = static_cast<int>(std::floor((tau_max - first) * cf.omega / kTwoPi));
    const auto taus = critical_delays(qp, cf, n_max, opts);
    for (int n = 0; n <= n_max; ++n) {
      const double tau = taus[static_cast<std::size_t>(n)];
      if (!(tau > 0.0) || tau > tau_max) continue;
      s.events.push_back({tau, delta, static_cast<int>(j) + 1, n});
    }
  }
  std::sort(s.events.begin(), s.events.end(),
            [](const SwitchEvent& l, const SwitchEvent& r) { return l.tau < r.tau; });

  for (std::size_t k = 1; k < s.events.size(); ++k) {
    if (s.events[k].tau - s.events[k - 1].tau < opts.tie_tol) {
      std::ostringstream msg;
      msg << "critical delays coincide near tau = " << s.events[k].tau
          << " (series " << s.events[k - 1].source << " and "
          << s.events[k].source << ")";
      fail(ErrorKind::Tie, msg.str());
    }
  }

  int running = s.n_at_zero;
  double open = 0.0;
  bool in_window = running == 0;
  for (const auto& e : s.events) {
    running += e.delta;
    if (running < 0) {
      std::ostringstream msg;
      msg << "root count turns negative at tau = " << e.tau;
      fail(ErrorKind::Internal, msg.str());
    }
    if (in_window && running != 0) {
      s.windows.push_back({open, e.tau});
      in_window = false;
    } else if (!in_window && running == 0) {
      open = e.tau;
      in_window = true;
    }
  }
  if (in_window) s.windows.push_back({open, tau_max});

  for (const auto& w : s.windows) {
    if (w.lo > 0.0 && !(f.discriminant > 0.0 && std::abs(qp.a0()) > std::abs(qp.b0()))) {
      fail(ErrorKind::Internal,
           "stability gained without a positive discriminant and |a0| > |b0|");
    }
  }
  return s;
}

}  // namespace delayswitch
