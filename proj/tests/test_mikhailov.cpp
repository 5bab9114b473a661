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

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "core/mikhailov.hpp"
#include "core/switches.hpp"
#include "support/helpers.hpp"

using namespace delayswitch;
using testing::kind_of;
using testing::random_qp;
using testing::example;

namespace {

constexpr double kPi = std::numbers::pi;

double total_change(const HodographTrace& t) {
  return t.samples.back().arg - t.samples.front().arg;
}

void check_trace_invariants(const QuasiPolynomial& qp, const HodographTrace& t) {
  REQUIRE(t.samples.size() >= 2);
  CHECK(t.samples.front().omega == 0.0);
  CHECK(t.samples.front().w_i == 0.0);
  CHECK(t.samples.front().w_r == qp.a0() + qp.b0());
  CHECK(t.tail_bound < kPi / 4.0);
  for (std::size_t k = 1; k < t.samples.size(); ++k) {
    const auto& s = t.samples[k];
    CHECK(s.omega > t.samples[k - 1].omega);
    CHECK(std::abs(s.arg - t.samples[k - 1].arg) < kPi / 2.0);
    const double residue = std::remainder(s.arg - std::atan2(s.w_i, s.w_r), 2.0 * kPi);
    CHECK(std::abs(residue) < 1e-9);
  }
}

}  // namespace

TEST_CASE("trace") {
  const auto qp = example();
  SUBCASE("unstable without delay") {
    const auto t = trace(qp, 0.0);
    check_trace_invariants(qp, t);
    CHECK(std::abs(total_change(t) - (-kPi / 2.0)) <= 1e-3);
  }
  SUBCASE("stable inside the window") {
    const auto t = trace(qp, 2.5);
    check_trace_invariants(qp, t);
    CHECK(std::abs(total_change(t) - 1.5 * kPi) <= 1e-3);
  }
  SUBCASE("plain polynomial (l + 1)^3") {
    const QuasiPolynomial cube(1, 3, 3, 0, 0, 0);
    for (double tau : {0.0, 1.0, 17.0}) {
      const auto t = trace(cube, tau);
      check_trace_invariants(cube, t);
      CHECK(std::abs(total_change(t) - 1.5 * kPi) <= 1e-3);
      for (const auto& s : t.samples) {
        const double w = s.omega;
        CHECK(s.w_r == doctest::Approx(1.0 - 3.0 * w * w).epsilon(1e-12));
        CHECK(s.w_i == doctest::Approx(3.0 * w - w * w * w).epsilon(1e-12));
      }
    }
  }
  SUBCASE("critical delay is reported") {
    const auto cfs = crossing_frequencies(amplitude_polynomial(qp));
    const double tau = critical_delays(qp, cfs[0], 0)[0];
    CHECK(kind_of([&] { trace(qp, tau); }) == ErrorKind::CriticalDelay);
    const double tau2 = critical_delays(qp, cfs[1], 1)[1];
    CHECK(kind_of([&] { trace(qp, tau2); }) == ErrorKind::CriticalDelay);
  }
  SUBCASE("truncation soundness") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::vector<std::pair<QuasiPolynomial, double>> cases{{qp, 2.5}, {qp, 0.0}};
    while (cases.size() < 22) cases.emplace_back(random_qp(rng), u(rng));
    for (const auto& [p, tau] : cases) {
      HodographTrace t;
      try {
        t = trace(p, tau);
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::CriticalDelay);
        continue;
      }
      const double far = 2.0 * t.omega_cut;
      const auto w = real_imag(p, far, tau);
      const double extended =
          t.samples.back().arg + std::remainder(std::atan2(w.im, w.re) - t.samples.back().arg,
                                                2.0 * kPi);
      CHECK(std::abs(extended - t.samples.back().arg) < 1e-3);
    }
  }
  CHECK(kind_of([&] { trace(qp, -1.0); }) == ErrorKind::Domain);
}

TEST_CASE("verdict") {
  const auto qp = example();
  SUBCASE("inside the window") {
    const auto v = verdict(trace(qp, 2.5));
    CHECK(v.stable);
    CHECK(v.n_rhp == 0);
    REQUIRE(v.quadrant_sequence.size() >= 3);
    CHECK(v.quadrant_sequence[0] == Quadrant::I);
    CHECK(v.quadrant_sequence[1] == Quadrant::II);
    CHECK(v.quadrant_sequence[2] == Quadrant::III);
  }
  SUBCASE("before and after the window") {
    for (double tau : {0.0, 4.0}) {
      const auto v = verdict(trace(qp, tau));
      CHECK_FALSE(v.stable);
      CHECK(v.n_rhp == 2);
      CHECK(std::abs(v.total_arg_change - (-kPi / 2.0)) <= 1e-3);
    }
    // Without delay the curve stays below the real axis.
    const auto v0 = verdict(trace(qp, 0.0));
    REQUIRE(v0.quadrant_sequence.size() == 2);
    CHECK(v0.quadrant_sequence[0] == Quadrant::IV);
    CHECK(v0.quadrant_sequence[1] == Quadrant::III);
  }
  SUBCASE("negative W(0) gives an odd count") {
    const QuasiPolynomial qp_odd(-4, 0, 3, 0, 0, 0);  // (l - 1)(l + 2)^2
    CHECK(rhp_count(qp_odd, 0.0) == 1);
    CHECK(rhp_count_zero_delay(qp_odd) == 1);
  }
  SUBCASE("loose tail is inconclusive") {
    auto t = trace(qp, 2.5);
    t.tail_bound = kPi / 4.0;
    CHECK(kind_of([&] { verdict(t); }) == ErrorKind::Inconclusive);
  }
  SUBCASE("inconsistent winding is an internal error") {
    auto t = trace(qp, 2.5);
    t.samples.back().arg += 1.0;
    CHECK(kind_of([&] { verdict(t); }) == ErrorKind::Internal);
  }
}

TEST_CASE("rhp_count") {
  const auto qp = example();
  CHECK(rhp_count(qp, 0.0) == 2);
  CHECK(rhp_count(qp, 0.0) == rhp_count_zero_delay(qp));
  CHECK(rhp_count(qp, 1.8) == 2);
  CHECK(rhp_count(qp, 2.5) == 0);
  CHECK(schedule(qp, 5.0).count_at(2.5) == 0);

  SUBCASE("zero delay agrees with Routh-Hurwitz") {
    std::mt19937_64 rng(32);
    int checked = 0;
    while (checked < 50) {
      const auto p = random_qp(rng);
      int want = 0;
      try {
        want = rhp_count_zero_delay(p);
      } catch (const Error&) {
        continue;
      }
      CHECK(rhp_count(p, 0.0) == want);
      ++checked;
    }
  }

  SUBCASE("agrees with the switch schedule") {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    int checked = 0;
    for (int attempt = 0; attempt < 5000 && checked < 50; ++attempt) {
      const auto p = random_qp(rng);
      const double tau = u(rng);
      SwitchSchedule s;
      HodographTrace t;
      try {
        s = schedule(p, tau + 1.0);
        t = trace(p, tau);
      } catch (const Error&) {
        continue;
      }
      if (t.min_modulus <= 1e-4) continue;
      CHECK(verdict(t).n_rhp == s.count_at(tau));
      ++checked;
    }
    CHECK(checked == 50);
  }
}
