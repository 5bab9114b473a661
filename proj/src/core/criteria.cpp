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

#include "criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "errors.hpp"

namespace delayswitch {

namespace {

void require_zero_b1_b2(const QuasiPolynomial& qp) {
  if (qp.b1() != 0.0 || qp.b2() != 0.0) {
    std::ostringstream msg;
    msg << "only b1 = b2 = 0 is supported (got b1 = " << qp.b1()
        << ", b2 = " << qp.b2() << ")";
    fail(ErrorKind::Unsupported, msg.str());
  }
}

struct SignConditions {
  bool b0 = false;
  bool a1 = false;
  bool a2 = false;
  bool all() const { return b0 && a1 && a2; }
};

SignConditions sign_conditions(const QuasiPolynomial& qp) {
  SignConditions c;
  c.b0 = 0.0 > qp.b0() && qp.b0() > -qp.a0();
  c.a1 = qp.a1() < 0.0;
  c.a2 = qp.b0() != 0.0 && qp.a2() > qp.a1() * qp.a1() / (2.0 * std::abs(qp.b0()));
  return c;
}

double tau_upper_of(const QuasiPolynomial& qp) {
  if (qp.b0() == 0.0 || !(qp.a2() > 0.0)) return 0.0;
  return std::sqrt(2.0 * qp.a2() / std::abs(qp.b0()));
}

double endpoint_scale(const Polynomial& p, double x) {
  double s = 0.0;
  double xp = 1.0;
  for (double c : p.coefficients()) {
    s += std::abs(c) * xp;
    xp *= std::abs(x);
  }
  return s;
}

}  // namespace

TheoremReport check_theorem(const QuasiPolynomial& qp, double tau_bar,
                            const TheoremOptions& opts) {
  require_zero_b1_b2(qp);
  if (!std::isfinite(tau_bar) || !(tau_bar > 0.0)) {
    fail(ErrorKind::Domain, "tau_bar must be positive and finite");
  }
  TheoremReport r;
  const SignConditions signs = sign_conditions(qp);
  r.b0_condition = signs.b0;
  r.a1_condition = signs.a1;
  r.a2_condition = signs.a2;
  r.b_small = true;
  r.tau_upper = tau_upper_of(qp);
  r.below_upper = tau_bar < r.tau_upper;

  const double w0 = qp.a0() + qp.b0();
  if (qp.a2() > 0.0 && w0 > 0.0) {
    // W_r <= a0 + |b0| - a2 w^2, so a sign change happens before this.
    const double limit =
        2.0 * std::sqrt((std::abs(qp.a0()) + std::abs(qp.b0())) / qp.a2()) + opts.search_start;
    for (double w = opts.search_start; w <= limit * opts.search_ratio; w *= opts.search_ratio) {
      if (real_imag(qp, w, tau_bar).re < 0.0) {
        r.omega_bar = w;
        break;
      }
    }
  }
  if (r.omega_bar) {
    double min_wi = std::numeric_limits<double>::infinity();
    const int n = opts.confirm_points;
    for (int k = 1; k <= n; ++k) {
      const double w = *r.omega_bar * k / (n + 1.0);
      min_wi = std::min(min_wi, real_imag(qp, w, tau_bar).im);
    }
    r.min_wi = min_wi;
    r.witness_found = min_wi > opts.wi_margin;
  }
  r.passed = signs.all() && r.b_small && r.below_upper && r.witness_found;
  if (r.passed) r.tau_bar = tau_bar;
  return r;
}

CorollaryCubic corollary_coefficients(double a0, double a1, double a2, double b0) {
  if (b0 == 0.0) fail(ErrorKind::Domain, "b0 must be nonzero");
  const double ab0 = std::abs(b0);
  const double aa1 = std::abs(a1);
  CorollaryCubic g;
  g.g3 = (a0 + 2.0 * ab0) / 6.0;
  g.g2 = -aa1 / 2.0;
  g.g1 = -a2;
  g.g0 = (aa1 * a2 + a0 - ab0) / ab0;
  return g;
}

CorollaryCubic corollary_g(const QuasiPolynomial& qp) {
  const SignConditions signs = sign_conditions(qp);
  if (!signs.b0) fail(ErrorKind::Precondition, "hypothesis 0 > b0 > -a0 violated");
  if (!signs.a1) fail(ErrorKind::Precondition, "hypothesis a1 < 0 violated");
  if (!signs.a2) fail(ErrorKind::Precondition, "hypothesis a2 > a1^2/(2|b0|) violated");
  return corollary_coefficients(qp.a0(), qp.a1(), qp.a2(), qp.b0());
}

int sturm_count(const Polynomial& poly, double lo, double hi) {
  if (poly.is_zero()) fail(ErrorKind::Domain, "zero polynomial");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    fail(ErrorKind::Domain, "interval must satisfy lo < hi");
  }
  for (double x : {lo, hi}) {
    if (std::abs(poly(x)) <= 1e-14 * endpoint_scale(poly, x)) {
      std::ostringstream msg;
      msg << "interval endpoint " << x << " is a root";
      fail(ErrorKind::Endpoint, msg.str());
    }
  }
  const auto chain = sturm_chain(poly);
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

std::vector<double> sturm_roots(const Polynomial& poly, double lo, double hi, double tol) {
  const int total = sturm_count(poly, lo, hi);
  const auto chain = sturm_chain(poly);
  std::vector<double> roots;
  struct Span {
    double lo, hi;
    int vlo, vhi;
  };
  std::vector<Span> pending{{lo, hi, sign_variations(chain, lo), sign_variations(chain, hi)}};
  while (!pending.empty()) {
    Span s = pending.back();
    pending.pop_back();
    const int count = s.vlo - s.vhi;
    if (count <= 0) continue;
    if (s.hi - s.lo <= tol * std::max(1.0, std::abs(s.hi))) {
      roots.push_back(0.5 * (s.lo + s.hi));
      continue;
    }
    const double mid = 0.5 * (s.lo + s.hi);
    if (poly(mid) == 0.0) {
      roots.push_back(mid);
      // Nudge past the exact root so both halves have nonzero endpoints.
      const double eps = tol * std::max(1.0, std::abs(mid));
      pending.push_back({s.lo, mid - eps, s.vlo, sign_variations(chain, mid - eps)});
      pending.push_back({mid + eps, s.hi, sign_variations(chain, mid + eps), s.vhi});
      continue;
    }
    const int vmid = sign_variations(chain, mid);
    pending.push_back({s.lo, mid, s.vlo, vmid});
    pending.push_back({mid, s.hi, vmid, s.vhi});
  }
  std::sort(roots.begin(), roots.end());
  if (static_cast<int>(roots.size()) != total) {
    fail(ErrorKind::Internal, "Sturm bisection lost a root");
  }
  return roots;
}

CorollaryReport check_corollary(const QuasiPolynomial& qp) {
  require_zero_b1_b2(qp);
  CorollaryReport r;
  r.tau_upper = tau_upper_of(qp);
  r.hypotheses = sign_conditions(qp).all();
  if (!r.hypotheses) return r;
  r.g = corollary_g(qp);
  constexpr double kStart = 1e-12;
  const Polynomial g = r.g->polynomial();
  r.roots = sturm_roots(g, kStart, r.tau_upper);
  r.passed = !r.roots.empty();
  if (r.roots.size() >= 2) {
    r.stable_tau_interval = Window{r.roots[0], r.roots[1]};
  } else if (r.roots.size() == 1) {
    r.stable_tau_interval = Window{r.roots[0], r.tau_upper};
  }
  return r;
}

double remark_lower_bound(const QuasiPolynomial& qp) {
  if (qp.b0() == 0.0) fail(ErrorKind::Domain, "b0 must be nonzero");
  return qp.a1() / qp.b0();
}

}  // namespace delayswitch
