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

#include "mikhailov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <sstream>

#include "errors.hpp"

namespace delayswitch {

namespace {

constexpr double kPi = std::numbers::pi;

// Upper bound on |W(i omega) + i omega^3|, i.e. everything but the cubic term.
double remainder_bound(const QuasiPolynomial& qp, double omega) {
  const double quad = std::abs(qp.a2()) + std::abs(qp.b2());
  const double lin = std::abs(qp.a1()) + std::abs(qp.b1());
  const double cst = std::abs(qp.a0()) + std::abs(qp.b0());
  return (quad * omega + lin) * omega + cst;
}

// Point beyond which omega^3 > ratio * R(omega); R/omega^3 is decreasing.
double dominance_point(const QuasiPolynomial& qp, double ratio) {
  double lo = 0.0;
  double hi = 1.0;
  while (hi * hi * hi <= ratio * remainder_bound(qp, hi)) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid * mid * mid > ratio * remainder_bound(qp, mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double wrap(double angle) { return std::remainder(angle, 2.0 * kPi); }

HodographSample sample_at(const QuasiPolynomial& qp, double omega, double tau) {
  const RealImag w = real_imag(qp, omega, tau);
  return {omega, w.re, w.im, std::atan2(w.im, w.re)};
}

}  // namespace

const char* to_string(Quadrant q) noexcept {
  switch (q) {
    case Quadrant::I: return "I";
    case Quadrant::II: return "II";
    case Quadrant::III: return "III";
    case Quadrant::IV: return "IV";
  }
  return "?";
}

HodographTrace trace(const QuasiPolynomial& qp, double tau, const TraceOptions& opts) {
  if (!std::isfinite(tau) || tau < 0.0) {
    fail(ErrorKind::Domain, "tau must be finite and non-negative");
  }
  HodographTrace out;
  out.tau = tau;

  // Beyond this point |W + i w^3| < w^3 / 4, so arg W stays within
  // asin(1/4) of -pi/2 and coarse samples cannot lose a winding.
  const double dominance = dominance_point(qp, 4.0);
  double base_step = std::min(opts.initial_step, dominance / 1000.0);
  if (tau > 0.0) base_step = std::min(base_step, 0.25 / tau);

  const double critical = opts.critical_rel_tol * qp.scale();
  auto report_critical = [&](double omega) {
    std::ostringstream msg;
    msg << "hodograph passes within " << out.min_modulus
        << " of the origin near omega = " << omega << "; tau = " << tau
        << " is a critical delay";
    fail(ErrorKind::CriticalDelay, msg.str());
  };

  HodographSample first{0.0, qp.a0() + qp.b0(), 0.0, 0.0};
  first.arg = std::atan2(0.0, first.w_r);
  out.samples.push_back(first);
  out.min_modulus = std::abs(first.w_r);

  double omega = 0.0;
  double step = base_step;
  int depth = 0;
  while (omega < dominance) {
    const double next = std::min(omega + step, dominance);
    HodographSample s = sample_at(qp, next, tau);
    const double modulus = std::hypot(s.w_r, s.w_i);
    const double delta = wrap(s.arg - out.samples.back().arg);
    out.min_modulus = std::min(out.min_modulus, modulus);
    if (std::abs(delta) >= opts.max_arg_step) {
      if (depth >= opts.max_depth || next - omega <= 4.0 * std::numeric_limits<double>::epsilon() * next) {
        if (out.min_modulus < critical) report_critical(next);
        std::ostringstream msg;
        msg << "argument step control exhausted near omega = " << omega;
        fail(ErrorKind::Internal, msg.str());
      }
      step *= 0.5;
      ++depth;
      continue;
    }
    if (modulus < critical) report_critical(next);
    s.arg = out.samples.back().arg + delta;
    out.samples.push_back(s);
    omega = next;
    if (depth > 0) {
      step = std::min(2.0 * step, base_step);
      --depth;
    }
  }

  // Geometric tail: each doubling keeps the argument inside the dominance
  // sector, so unwrapping is unambiguous.
  const double tail_sin = std::sin(opts.tail_target);
  while (remainder_bound(qp, omega) > tail_sin * omega * omega * omega) {
    omega *= 2.0;
    HodographSample s = sample_at(qp, omega, tau);
    s.arg = out.samples.back().arg + wrap(s.arg - out.samples.back().arg);
    out.samples.push_back(s);
  }
  out.omega_cut = omega;
  const double ratio = remainder_bound(qp, omega) / (omega * omega * omega);
  out.tail_bound = std::asin(std::min(1.0, ratio));
  return out;
}

StabilityVerdict verdict(const HodographTrace& trace) {
  if (trace.samples.size() < 2) fail(ErrorKind::Domain, "trace has no samples");
  if (!(trace.tail_bound < kPi / 4.0)) {
    std::ostringstream msg;
    msg << "tail bound " << trace.tail_bound << " too large to fix the winding";
    fail(ErrorKind::Inconclusive, msg.str());
  }
  StabilityVerdict v;
  v.total_arg_change = trace.samples.back().arg - trace.samples.front().arg;

  const double units = (1.5 * kPi - v.total_arg_change) / kPi;
  const double n = std::round(units);
  // W(0) > 0 forces an even count, W(0) < 0 an odd one.
  const bool expect_odd = trace.samples.front().w_r < 0.0;
  if (std::abs(units - n) * kPi > trace.tail_bound + 1e-9 ||
      (std::fmod(std::abs(n), 2.0) == 1.0) != expect_odd || n < 0.0) {
    std::ostringstream msg;
    msg << "argument change " << v.total_arg_change
        << " is inconsistent with a degree-3 quasi-polynomial";
    fail(ErrorKind::Internal, msg.str());
  }
  v.n_rhp = static_cast<int>(n);
  v.stable = v.n_rhp == 0;

  for (const auto& s : trace.samples) {
    if (s.w_r == 0.0 || s.w_i == 0.0) continue;
    Quadrant q;
    if (s.w_r > 0.0) {
      q = s.w_i > 0.0 ? Quadrant::I : Quadrant::IV;
    } else {
      q = s.w_i > 0.0 ? Quadrant::II : Quadrant::III;
    }
    if (v.quadrant_sequence.empty() || v.quadrant_sequence.back() != q) {
      v.quadrant_sequence.push_back(q);
    }
  }
  return v;
}

int rhp_count(const QuasiPolynomial& qp, double tau, const TraceOptions& opts) {
  return verdict(trace(qp, tau, opts)).n_rhp;
}

}  // namespace delayswitch
