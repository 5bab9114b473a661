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

#include <complex>
#include <span>

#include <Eigen/Core>

namespace delayswitch {

using Complex = std::complex<double>;

/// Characteristic quasi-polynomial of a three-variable system with one delay,
///
///   W(lambda) = P(lambda) + Q(lambda) * exp(-lambda * tau),
///   P(lambda) = lambda^3 + a2 lambda^2 + a1 lambda + a0,
///   Q(lambda) = b2 lambda^2 + b1 lambda + b0.
///
/// Immutable after construction. Construction rejects non-finite coefficients
/// and W(0) = a0 + b0 = 0 (relative to the coefficient magnitudes), since
/// every downstream analysis assumes the curve W(i omega) starts off the
/// origin.
class QuasiPolynomial {
 public:
  static constexpr double kDefaultZeroTolerance = 1e-9;

  QuasiPolynomial(double a0, double a1, double a2, double b0, double b1,
                  double b2, double zero_tolerance = kDefaultZeroTolerance);

  double a0() const noexcept { return a0_; }
  double a1() const noexcept { return a1_; }
  double a2() const noexcept { return a2_; }
  double b0() const noexcept { return b0_; }
  double b1() const noexcept { return b1_; }
  double b2() const noexcept { return b2_; }

  Complex p(Complex lambda) const noexcept;
  Complex q(Complex lambda) const noexcept;

  /// Largest coefficient magnitude, at least 1.
  double scale() const noexcept;

  friend bool operator==(const QuasiPolynomial&,
                         const QuasiPolynomial&) = default;

 private:
  double a0_, a1_, a2_, b0_, b1_, b2_;
};

/// W(lambda) for delay tau >= 0.
Complex eval(const QuasiPolynomial& qp, Complex lambda, double tau);

struct RealImag {
  double re;
  double im;
};

/// (Re, Im) of W(i omega) in closed form.
RealImag real_imag(const QuasiPolynomial& qp, double omega, double tau);

struct CompanionPair {
  Eigen::Matrix3d a;
  Eigen::Matrix3d b;
};

/// Reads the coefficients off the companion-form pair (A, B) with
/// lambda I - A - B e^{-lambda tau} =
///   [ lambda  0       a0 + b0 e       ]
///   [ 1       lambda  -a1 - b1 e      ]
///   [ 0       1       lambda + a2 + b2 e ].
/// Throws ErrorKind::Shape naming the first entry that breaks the pattern.
QuasiPolynomial from_companion(const Eigen::Matrix3d& a,
                               const Eigen::Matrix3d& b);

/// Inverse of from_companion.
CompanionPair to_companion(const QuasiPolynomial& qp);

/// Number of roots with positive real part of the delay-free cubic
/// lambda^3 + (a2+b2) lambda^2 + (a1+b1) lambda + (a0+b0).
int rhp_count_zero_delay(const QuasiPolynomial& qp);

/// Routh-Hurwitz count of right-half-plane roots. Coefficients are ordered
/// from the leading term down; the leading coefficient must be nonzero.
/// A first-column entry below 1e-12 of its row scale raises
/// ErrorKind::Degenerate.
int routh_hurwitz_rhp(std::span<const double> coeffs_descending);

}  // namespace delayswitch
