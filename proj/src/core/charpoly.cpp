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

#include "charpoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace delayswitch {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    fail(ErrorKind::Domain, std::string(name) + " must be finite");
  }
}

// e^{-lambda tau} without going through std::exp(complex).
Complex delay_factor(Complex lambda, double tau) {
  const double magnitude = std::exp(-lambda.real() * tau);
  const double phase = lambda.imag() * tau;
  return {magnitude * std::cos(phase), -magnitude * std::sin(phase)};
}

void expect_entry(const Eigen::Matrix3d& m, const char* name, int row, int col,
                  double expected) {
  if (m(row, col) != expected) {
    std::ostringstream msg;
    msg << "matrix " << name << " is not in companion form: entry (" << row + 1
        << "," << col + 1 << ") is " << m(row, col) << ", expected " << expected;
    fail(ErrorKind::Shape, msg.str());
  }
}

}  // namespace

QuasiPolynomial::QuasiPolynomial(double a0, double a1, double a2, double b0,
                                 double b1, double b2, double zero_tolerance)
    : a0_(a0), a1_(a1), a2_(a2), b0_(b0), b1_(b1), b2_(b2) {
  require_finite(a0, "a0");
  require_finite(a1, "a1");
  require_finite(a2, "a2");
  require_finite(b0, "b0");
  require_finite(b1, "b1");
  require_finite(b2, "b2");
  const double bound =
      zero_tolerance * std::max({1.0, std::abs(a0), std::abs(b0)});
  if (!(std::abs(a0 + b0) > bound)) {
    std::ostringstream msg;
    msg << "W(0) = a0 + b0 = " << (a0 + b0)
        << " vanishes; the characteristic function must not have a root at 0";
    fail(ErrorKind::Domain, msg.str());
  }
}

Complex QuasiPolynomial::p(Complex lambda) const noexcept {
  return ((lambda + a2_) * lambda + a1_) * lambda + a0_;
}

Complex QuasiPolynomial::q(Complex lambda) const noexcept {
  return (b2_ * lambda + b1_) * lambda + b0_;
}

double QuasiPolynomial::scale() const noexcept {
  return std::max({1.0, std::abs(a0_), std::abs(a1_), std::abs(a2_),
                   std::abs(b0_), std::abs(b1_), std::abs(b2_)});
}

Complex eval(const QuasiPolynomial& qp, Complex lambda, double tau) {
  if (!finite(lambda)) fail(ErrorKind::Domain, "lambda must be finite");
  if (!std::isfinite(tau) || tau < 0.0) {
    fail(ErrorKind::Domain, "tau must be finite and non-negative");
  }
  return qp.p(lambda) + qp.q(lambda) * delay_factor(lambda, tau);
}

RealImag real_imag(const QuasiPolynomial& qp, double omega, double tau) {
  if (!std::isfinite(omega) || omega < 0.0) {
    fail(ErrorKind::Domain, "omega must be finite and non-negative");
  }
  if (!std::isfinite(tau) || tau < 0.0) {
    fail(ErrorKind::Domain, "tau must be finite and non-negative");
  }
  const double w2 = omega * omega;
  const double c = std::cos(omega * tau);
  const double s = std::sin(omega * tau);
  // Q(i omega) = (b0 - b2 w^2) + i b1 w, multiplied by (c - i s).
  const double q_re = qp.b0() - qp.b2() * w2;
  const double q_im = qp.b1() * omega;
  return {-qp.a2() * w2 + qp.a0() + q_re * c + q_im * s,
          -w2 * omega + qp.a1() * omega + q_im * c - q_re * s};
}

QuasiPolynomial from_companion(const Eigen::Matrix3d& a,
                               const Eigen::Matrix3d& b) {
  if (!a.allFinite() || !b.allFinite()) {
    fail(ErrorKind::Domain, "system matrices must be finite");
  }
  static constexpr double kCompanion[3][2] = {{0, 0}, {-1, 0}, {0, -1}};
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 2; ++col) {
      expect_entry(a, "A", row, col, kCompanion[row][col]);
    }
  }
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 2; ++col) expect_entry(b, "B", row, col, 0.0);
  }
  return QuasiPolynomial(-a(0, 2), a(1, 2), -a(2, 2), -b(0, 2), b(1, 2),
                         -b(2, 2));
}

CompanionPair to_companion(const QuasiPolynomial& qp) {
  CompanionPair pair;
  pair.a << 0, 0, -qp.a0(),
           -1, 0, qp.a1(),
            0, -1, -qp.a2();
  pair.b << 0, 0, -qp.b0(),
            0, 0, qp.b1(),
            0, 0, -qp.b2();
  return pair;
}

int routh_hurwitz_rhp(std::span<const double> coeffs) {
  constexpr double kRelTol = 1e-12;
  const std::size_t n = coeffs.size();
  if (n < 2) fail(ErrorKind::Domain, "polynomial must have degree >= 1");
  for (double c : coeffs) require_finite(c, "polynomial coefficient");
  if (coeffs[0] == 0.0) fail(ErrorKind::Domain, "leading coefficient is zero");

  const std::size_t width = (n + 1) / 2;
  std::vector<std::vector<double>> rows(n, std::vector<double>(width, 0.0));
  for (std::size_t i = 0; i < n; ++i) rows[i % 2][i / 2] = coeffs[i];

  double coeff_scale = 0.0;
  for (double c : coeffs) coeff_scale = std::max(coeff_scale, std::abs(c));

  auto check_pivot = [&](std::size_t row, double scale) {
    if (std::abs(rows[row][0]) <= kRelTol * scale) {
      std::ostringstream msg;
      msg << "Routh-Hurwitz table degenerates at row " << row
          << " (root on or symmetric about the imaginary axis)";
      fail(ErrorKind::Degenerate, msg.str());
    }
  };
  check_pivot(1, coeff_scale);

  for (std::size_t r = 2; r < n; ++r) {
    const auto& up = rows[r - 2];
    const auto& mid = rows[r - 1];
    double row_scale = 0.0;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      const double lhs = mid[0] * up[j + 1];
      const double rhs = up[0] * mid[j + 1];
      rows[r][j] = (lhs - rhs) / mid[0];
      row_scale =
          std::max(row_scale, std::max(std::abs(lhs), std::abs(rhs)) / std::abs(mid[0]));
    }
    check_pivot(r, row_scale);
  }

  int changes = 0;
  for (std::size_t r = 1; r < n; ++r) {
    if ((rows[r][0] > 0.0) != (rows[r - 1][0] > 0.0)) ++changes;
  }
  return changes;
}

int rhp_count_zero_delay(const QuasiPolynomial& qp) {
  const double coeffs[] = {1.0, qp.a2() + qp.b2(), qp.a1() + qp.b1(),
                           qp.a0() + qp.b0()};
  return routh_hurwitz_rhp(coeffs);
}

}  // namespace delayswitch
