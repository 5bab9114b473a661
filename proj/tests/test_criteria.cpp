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
#include <random>

#include "core/criteria.hpp"
#include "core/mikhailov.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace delayswitch;
using testing::kind_of;
using testing::example;

namespace {

// Random systems satisfying 0 > b0 > -a0, a1 < 0, a2 > a1^2/(2|b0|), b1 = b2 = 0.
QuasiPolynomial hypothesis_family(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double a0 = 0.05 + u(rng);
  const double b0 = -a0 * (0.2 + 0.75 * u(rng));
  const double a1 = -(0.02 + 0.8 * u(rng));
  const double a2 = a1 * a1 / (2.0 * std::abs(b0)) * (1.05 + 4.0 * u(rng));
  return {a0, a1, a2, b0, 0.0, 0.0};
}

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("check_theorem") {
  const auto qp = example();
  SUBCASE("inside the window") {
    const auto r = check_theorem(qp, 2.5);
    CHECK(r.b0_condition);
    CHECK(r.a1_condition);
    CHECK(r.a2_condition);
    CHECK(r.b_small);
    CHECK(r.below_upper);
    CHECK(r.tau_upper == doctest::Approx(3.72).epsilon(1e-3));
    REQUIRE(r.omega_bar.has_value());
    REQUIRE(r.tau_bar.has_value());
    CHECK(*r.tau_bar == 2.5);
    CHECK(r.passed);
    CHECK(real_imag(qp, *r.omega_bar, 2.5).re < 0.0);
    for (int k = 1; k < 1000; ++k) {
      CHECK(real_imag(qp, *r.omega_bar * k / 1000.0, 2.5).im > 0.0);
    }
  }
  SUBCASE("above the threshold") {
    const auto r = check_theorem(qp, 5.0);
    CHECK_FALSE(r.below_upper);
    CHECK_FALSE(r.passed);
    CHECK_FALSE(r.tau_bar.has_value());
  }
  SUBCASE("small delay has no witness") {
    const auto r = check_theorem(qp, 1.0);
    CHECK_FALSE(r.witness_found);
    CHECK_FALSE(r.passed);
    CHECK(r.min_wi < 0.0);
    CHECK(rhp_count(qp, 1.0) == 2);
  }
  SUBCASE("errors") {
    CHECK(kind_of([] { check_theorem(QuasiPolynomial(0.16, -0.23, 0.97, -0.14, 0.01, 0), 2.5); }) ==
          ErrorKind::Unsupported);
    CHECK(kind_of([] { check_theorem(QuasiPolynomial(0.16, -0.23, 0.97, -0.14, 0, -0.01), 2.5); }) ==
          ErrorKind::Unsupported);
    CHECK(kind_of([&] { check_theorem(qp, 0.0); }) == ErrorKind::Domain);
  }
  SUBCASE("sign conditions fail individually") {
    CHECK_FALSE(check_theorem(QuasiPolynomial(0.16, 0.23, 0.97, -0.14, 0, 0), 2.5).a1_condition);
    CHECK_FALSE(check_theorem(QuasiPolynomial(0.16, -0.23, 0.1, -0.14, 0, 0), 2.5).a2_condition);
    CHECK_FALSE(check_theorem(QuasiPolynomial(0.16, -0.23, 0.97, 0.14, 0, 0), 2.5).b0_condition);
  }
}

TEST_CASE("soundness: a passing theorem check means no unstable roots") {
  const auto qp = example();
  for (int k = 1; k < 40; ++k) {
    const double tau = 3.8 * k / 40.0;
    if (check_theorem(qp, tau).passed) CHECK(rhp_count(qp, tau) == 0);
  }
  std::mt19937_64 rng(41);
  int passed = 0;
  for (int i = 0; i < 100; ++i) {
    const auto p = hypothesis_family(rng);
    const double upper = std::sqrt(2.0 * p.a2() / std::abs(p.b0()));
    for (int k = 1; k < 30; ++k) {
      const double tau = upper * k / 30.0;
      if (!check_theorem(p, tau).passed) continue;
      ++passed;
      CHECK(rhp_count(p, tau) == 0);
    }
  }
  CHECK(passed > 20);
}

TEST_CASE("remark lower bound") {
  CHECK(remark_lower_bound(example()) == doctest::Approx(1.642857142857).epsilon(1e-12));
  CHECK(remark_lower_bound(QuasiPolynomial(2, -1, 0, -1, 0, 0)) == 1.0);
  CHECK(kind_of([] { remark_lower_bound(QuasiPolynomial(1, -1, 1, 0, 0, 0)); }) ==
        ErrorKind::Domain);
  CHECK_FALSE(check_theorem(example(), 1.5).passed);

  std::mt19937_64 rng(42);
  for (int i = 0; i < 100; ++i) {
    const auto p = hypothesis_family(rng);
    const double bound = remark_lower_bound(p);
    CHECK(bound > 0.0);
    for (int k = 1; k <= 10; ++k) {
      CHECK_FALSE(check_theorem(p, bound * k / 10.0).passed);
    }
  }
}

TEST_CASE("corollary_g") {
  SUBCASE("worked example") {
    const auto g = corollary_g(example());
    CHECK(std::abs(g.g3 - 11.0 / 150.0) <= 1e-12);
    CHECK(std::abs(g.g2 - (-0.115)) <= 1e-12);
    CHECK(std::abs(g.g1 - (-0.97)) <= 1e-12);
    CHECK(std::abs(g.g0 - 2431.0 / 1400.0) <= 1e-12);
  }
  SUBCASE("plain assembly") {
    const auto g = corollary_coefficients(1.0, -0.0, 1.0, -1.0);
    CHECK(g.g3 == 0.5);
    CHECK(g.g2 == 0.0);
    CHECK(g.g1 == -1.0);
    CHECK(g.g0 == 0.0);
  }
  SUBCASE("hypotheses are named") {
    CHECK(message_of([] { corollary_g(QuasiPolynomial(0.16, 0.23, 0.97, -0.14, 0, 0)); })
              .find("a1 < 0") != std::string::npos);
    CHECK(message_of([] { corollary_g(QuasiPolynomial(0.16, -0.23, 0.1, -0.14, 0, 0)); })
              .find("a2 > a1^2/(2|b0|)") != std::string::npos);
    CHECK(message_of([] { corollary_g(QuasiPolynomial(0.1, -0.23, 0.97, -0.14, 0, 0)); })
              .find("0 > b0 > -a0") != std::string::npos);
    CHECK(kind_of([] { corollary_g(QuasiPolynomial(0.1, -0.23, 0.97, -0.14, 0, 0)); }) ==
          ErrorKind::Precondition);
  }
  SUBCASE("g < 0 certifies the theorem") {
    std::mt19937_64 rng(43);
    int certified = 0;
    for (int i = 0; i < 200; ++i) {
      const auto p = hypothesis_family(rng);
      const auto g = corollary_g(p);
      CHECK(g(0.0) > 0.0);
      const double upper = std::sqrt(2.0 * p.a2() / std::abs(p.b0()));
      for (int k = 1; k < 50; ++k) {
        const double tau = upper * k / 50.0;
        if (!(g(tau) < 0.0)) continue;
        ++certified;
        CHECK(check_theorem(p, tau).passed);
      }
    }
    CHECK(certified > 50);
  }
}

TEST_CASE("sturm_count") {
  SUBCASE("worked example cubic") {
    const Polynomial g = corollary_g(example()).polynomial();
    const auto oracle_roots = oracle::scan_roots([&](double x) { return g(x); }, 0.0, 3.7224);
    CHECK(oracle_roots.size() == 2);
    CHECK(sturm_count(g, 0.0, 3.7224) == 2);
  }
  CHECK(sturm_count(Polynomial{1.0, 0.0, 1.0}, -10.0, 10.0) == 0);
  SUBCASE("repeated root counts once and the chain ends at the gcd") {
    const Polynomial sq{1.0, -2.0, 1.0};  // (x - 1)^2
    const auto chain = sturm_chain(sq);
    CHECK(chain.back().degree() == 1);
    CHECK(sturm_count(sq, 0.0, 3.0) == 1);
    CHECK(sturm_count(Polynomial{-1.0, 3.0, -3.0, 1.0}, -2.0, 2.0) == 1);  // (x - 1)^3
  }
  SUBCASE("square-free chain ends at a constant") {
    CHECK(sturm_chain(Polynomial{-6.0, 11.0, -6.0, 1.0}).back().degree() == 0);
  }
  SUBCASE("errors") {
    CHECK(kind_of([] { sturm_count(Polynomial{-1.0, 1.0}, 1.0, 2.0); }) == ErrorKind::Endpoint);
    CHECK(kind_of([] { sturm_count(Polynomial{}, 0.0, 1.0); }) == ErrorKind::Domain);
    CHECK(kind_of([] { sturm_count(Polynomial{1.0, 1.0}, 2.0, 1.0); }) == ErrorKind::Domain);
  }
  SUBCASE("random cubics and quartics against the scan oracle") {
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    int checked = 0;
    while (checked < 100) {
      const int degree = 3 + checked % 2;
      std::vector<double> c(static_cast<std::size_t>(degree) + 1);
      for (auto& x : c) x = u(rng);
      const Polynomial p(c);
      const double lo = -3.0, hi = 3.0;
      const auto want = oracle::scan_roots([&](double x) { return p(x); }, lo, hi);
      // Keep only cases the sign scan resolves unambiguously.
      bool clean = std::abs(p(lo)) > 1e-6 && std::abs(p(hi)) > 1e-6;
      const Polynomial dp = p.derivative();
      for (double r : want) clean = clean && std::abs(dp(r)) > 1e-3;
      if (!clean) continue;
      CHECK(sturm_count(p, lo, hi) == static_cast<int>(want.size()));
      const auto roots = sturm_roots(p, lo, hi);
      REQUIRE(roots.size() == want.size());
      for (std::size_t k = 0; k < roots.size(); ++k) CHECK(std::abs(roots[k] - want[k]) < 1e-9);
      ++checked;
    }
  }
}

TEST_CASE("check_corollary") {
  SUBCASE("worked example") {
    const auto r = check_corollary(example());
    CHECK(r.hypotheses);
    CHECK(r.passed);
    REQUIRE(r.stable_tau_interval.has_value());
    CHECK(std::abs(r.stable_tau_interval->lo - 1.86988) <= 1e-3);
    CHECK(std::abs(r.stable_tau_interval->hi - 3.41087) <= 1e-3);
    CHECK(r.tau_upper == doctest::Approx(3.7224).epsilon(1e-3));
    const auto& g = *r.g;
    CHECK(g(r.stable_tau_interval->lo) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    for (int k = 1; k < 20; ++k) {
      const double tau = r.stable_tau_interval->lo +
                         (r.stable_tau_interval->hi - r.stable_tau_interval->lo) * k / 20.0;
      CHECK(g(tau) < 0.0);
      CHECK(rhp_count(example(), tau) == 0);
    }
  }
  SUBCASE("interval implies the theorem") {
    const auto r = check_corollary(example());
    const double lo = r.stable_tau_interval->lo + 1e-3;
    const double hi = r.stable_tau_interval->hi - 1e-3;
    for (int k = 0; k <= 40; ++k) {
      CHECK(check_theorem(example(), lo + (hi - lo) * k / 40.0).passed);
    }
  }
  SUBCASE("hypothesis gate") {
    const auto r = check_corollary(QuasiPolynomial(0.16, -0.23, 0.1, -0.14, 0, 0));
    CHECK_FALSE(r.hypotheses);
    CHECK_FALSE(r.passed);
    CHECK_FALSE(r.stable_tau_interval.has_value());
  }
  CHECK(kind_of([] { check_corollary(QuasiPolynomial(0.16, -0.23, 0.97, -0.14, 0.1, 0)); }) ==
        ErrorKind::Unsupported);
}
