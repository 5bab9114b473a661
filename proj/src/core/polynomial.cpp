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

#include "polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "errors.hpp"

namespace delayswitch {

Polynomial::Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) {
  trim();
}

Polynomial::Polynomial(std::initializer_list<double> ascending) : coeffs_(ascending) {
  trim();
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator[](int power) const noexcept {
  if (power < 0 || power > degree()) return 0.0;
  return coeffs_[static_cast<std::size_t>(power)];
}

double Polynomial::max_abs() const noexcept {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double Polynomial::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    d[k - 1] = static_cast<double>(k) * coeffs_[k];
  }
  return Polynomial(std::move(d));
}

Polynomial Polynomial::remainder(const Polynomial& divisor, double rel_tol) const {
  if (divisor.is_zero()) fail(ErrorKind::Domain, "division by the zero polynomial");
  std::vector<double> r = coeffs_;
  const int dd = divisor.degree();
  const double lead = divisor.leading();
  const double scale = max_abs();
  for (int k = degree(); k >= dd; --k) {
    const double factor = r[static_cast<std::size_t>(k)] / lead;
    for (int j = 0; j <= dd; ++j) {
      r[static_cast<std::size_t>(k - dd + j)] -= factor * divisor[j];
    }
    r[static_cast<std::size_t>(k)] = 0.0;
  }
  for (double& c : r) {
    if (std::abs(c) <= rel_tol * scale) c = 0.0;
  }
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-() const {
  std::vector<double> n = coeffs_;
  for (double& c : n) c = -c;
  return Polynomial(std::move(n));
}

std::vector<Polynomial> sturm_chain(const Polynomial& p) {
  if (p.is_zero()) fail(ErrorKind::Domain, "Sturm chain of the zero polynomial");
  std::vector<Polynomial> chain{p};
  if (p.degree() == 0) return chain;
  chain.push_back(p.derivative());
  while (chain.back().degree() > 0) {
    Polynomial next = -chain[chain.size() - 2].remainder(chain.back());
    if (next.is_zero()) break;
    chain.push_back(std::move(next));
  }
  return chain;
}

int sign_variations(const std::vector<Polynomial>& chain, double x) {
  int variations = 0;
  int last = 0;
  for (const auto& poly : chain) {
    const double v = poly(x);
    const int sign = (v > 0.0) - (v < 0.0);
    if (sign == 0) continue;
    if (last != 0 && sign != last) ++variations;
    last = sign;
  }
  return variations;
}

double monic_cubic_discriminant(double c2, double c1, double c0) noexcept {
  return 18.0 * c2 * c1 * c0 - 4.0 * c2 * c2 * c2 * c0 + c2 * c2 * c1 * c1 -
         4.0 * c1 * c1 * c1 - 27.0 * c0 * c0;
}

namespace {

double polish(double x, double c2, double c1, double c0) {
  // Two Newton steps always; continue while the step is still shrinking.
  double prev_step = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 8; ++i) {
    const double f = ((x + c2) * x + c1) * x + c0;
    const double df = (3.0 * x + 2.0 * c2) * x + c1;
    if (df == 0.0 || f == 0.0) break;
    const double step = f / df;
    if (i >= 2 && !(std::abs(step) < prev_step)) break;
    const double next = x - step;
    if (!std::isfinite(next)) break;
    x = next;
    prev_step = std::abs(step);
  }
  return x;
}

}  // namespace

std::vector<double> solve_monic_cubic(double c2, double c1, double c0) {
  // Depressed cubic t^3 + p t + q with x = t - c2/3.
  const double shift = c2 / 3.0;
  const double p = c1 - c2 * c2 / 3.0;
  const double q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
  std::vector<double> roots;
  const double disc = monic_cubic_discriminant(c2, c1, c0);
  if (disc > 0.0 && p < 0.0) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      roots.push_back(m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - shift);
    }
  } else {
    const double half_q = q / 2.0;
    const double inner = half_q * half_q + p * p * p / 27.0;
    const double root = std::sqrt(std::max(inner, 0.0));
    // Pick the larger-magnitude branch to avoid cancellation.
    const double u = std::cbrt(-half_q + (half_q <= 0.0 ? root : -root));
    const double t = (u == 0.0) ? 0.0 : u - p / (3.0 * u);
    roots.push_back(t - shift);
    if (disc == 0.0 && p != 0.0) {
      // Double root at t = -3q/(2p).
      roots.push_back(-1.5 * q / p - shift);
      roots.push_back(-1.5 * q / p - shift);
    }
  }
  for (double& r : roots) r = polish(r, c2, c1, c0);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace delayswitch
