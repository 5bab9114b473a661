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

#include <random>

#include "core/charpoly.hpp"
#include "core/errors.hpp"
#include "core/switches.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

namespace testing {

inline delayswitch::QuasiPolynomial example() {
  using oracle::Example;
  return {Example::a0, Example::a1, Example::a2, Example::b0, Example::b1, Example::b2};
}

/// Runs fn and returns the kind of the delayswitch::Error it throws.
template <typename Fn>
delayswitch::ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const delayswitch::Error& e) {
    return e.kind();
  }
  FAIL("expected a delayswitch::Error");
  return delayswitch::ErrorKind::Internal;
}

inline delayswitch::QuasiPolynomial random_qp(std::mt19937_64& rng, bool with_b12 = true,
                                              double range = 2.0) {
  std::uniform_real_distribution<double> u(-range, range);
  for (;;) {
    const double a0 = u(rng), b0 = u(rng);
    if (std::abs(a0 + b0) < 0.05) continue;
    const double a1 = u(rng), a2 = u(rng);
    const double b1 = with_b12 ? u(rng) : 0.0;
    const double b2 = with_b12 ? u(rng) : 0.0;
    return {a0, a1, a2, b0, b1, b2};
  }
}

// Random systems whose amplitude cubic has one negative and two positive
// roots, well separated, with |a0| > |b0|.
inline delayswitch::QuasiPolynomial two_crossing_system(std::mt19937_64& rng, bool with_b12) {
  for (;;) {
    const auto qp = random_qp(rng, with_b12);
    const auto f = delayswitch::amplitude_polynomial(qp);
    if (!(f.c0 > 0.0) || !(f.discriminant > 1e-4)) continue;
    const auto roots = oracle::scan_roots([&](double x) { return f(x); }, 0.0,
                                          1.0 + std::abs(f.c2) + std::abs(f.c1) + f.c0, 20000);
    if (roots.size() != 2) continue;
    if (std::abs(f.derivative(roots[0])) < 1e-3 || std::abs(f.derivative(roots[1])) < 1e-3) {
      continue;
    }
    if (std::abs(qp.q(delayswitch::Complex(0.0, std::sqrt(roots[0])))) < 1e-3) continue;
    if (std::abs(qp.q(delayswitch::Complex(0.0, std::sqrt(roots[1])))) < 1e-3) continue;
    return qp;
  }
}

}  // namespace testing
