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

#include <initializer_list>
#include <vector>

namespace delayswitch {

/// Dense real polynomial, coefficients in ascending order of power.
/// Trailing (leading-power) zeros are trimmed on construction.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> ascending);
  Polynomial(std::initializer_list<double> ascending);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }
  double operator[](int power) const noexcept;
  double leading() const noexcept { return coeffs_.empty() ? 0.0 : coeffs_.back(); }
  double max_abs() const noexcept;

  double operator()(double x) const noexcept;
  Polynomial derivative() const;

  /// Remainder of division by a nonzero divisor. Coefficients of the result
  /// smaller than rel_tol times the dividend's magnitude are flushed to zero.
  Polynomial remainder(const Polynomial& divisor, double rel_tol = 1e-12) const;

  Polynomial operator-() const;

 private:
  void trim();

  std::vector<double> coeffs_;
};

/// Sturm sequence p, p', -rem(p, p'), ... ending at the last nonzero
/// remainder (a constant for square-free p, gcd(p, p') otherwise).
std::vector<Polynomial> sturm_chain(const Polynomial& p);

/// Sign variations of the chain evaluated at x, zeros skipped.
int sign_variations(const std::vector<Polynomial>& chain, double x);

/// Real roots of x^3 + c2 x^2 + c1 x + c0, ascending, each polished with
/// Newton steps. Trigonometric form when three real roots exist, Cardano
/// otherwise. Repeated roots are reported once per multiplicity the closed
/// form yields.
std::vector<double> solve_monic_cubic(double c2, double c1, double c0);

/// Discriminant of x^3 + c2 x^2 + c1 x + c0.
double monic_cubic_discriminant(double c2, double c1, double c0) noexcept;

}  // namespace delayswitch
