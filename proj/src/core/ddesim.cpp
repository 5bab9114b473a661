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

#include "ddesim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/LU>

#include "errors.hpp"

namespace delayswitch {

namespace {

constexpr double kDivergence = 1e15;

Vec3 lagrange4(const std::vector<double>& ts, const std::vector<Vec3>& vs, double t) {
  const auto n = ts.size();
  auto it = std::upper_bound(ts.begin(), ts.end(), t);
  std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - ts.begin() - 1, 0));
  std::size_t first = i >= 1 ? i - 1 : 0;
  first = std::min(first, n - 4);
  Vec3 out = Vec3::Zero();
  for (std::size_t k = first; k < first + 4; ++k) {
    double w = 1.0;
    for (std::size_t m = first; m < first + 4; ++m) {
      if (m != k) w *= (t - ts[m]) / (ts[k] - ts[m]);
    }
    out += w * vs[k];
  }
  return out;
}

}  // namespace

void DelaySystem::validate() const {
  if (!a.allFinite() || !b.allFinite() || !appeal.allFinite()) {
    fail(ErrorKind::Domain, "system entries must be finite");
  }
  if (!std::isfinite(tau) || tau < 0.0) {
    fail(ErrorKind::Domain, "tau must be finite and non-negative");
  }
}

DelaySystem DelaySystem::from_quasipolynomial(const QuasiPolynomial& qp, const Vec3& appeal,
                                              double tau) {
  const CompanionPair pair = to_companion(qp);
  DelaySystem sys{pair.a, pair.b, appeal, tau};
  sys.validate();
  return sys;
}

HistoryFunction HistoryFunction::constant(const Vec3& value, double start) {
  if (!value.allFinite() || !std::isfinite(start)) {
    fail(ErrorKind::Domain, "constant history must be finite");
  }
  return HistoryFunction(Constant{value}, start);
}

HistoryFunction HistoryFunction::quadratic(double start) {
  if (!std::isfinite(start)) fail(ErrorKind::Domain, "history start must be finite");
  return HistoryFunction(Quadratic{}, start);
}

HistoryFunction HistoryFunction::tabulated(std::vector<double> times, std::vector<Vec3> states) {
  if (times.size() != states.size()) {
    fail(ErrorKind::Domain, "tabulated history needs one state per time");
  }
  if (times.size() < 4) {
    fail(ErrorKind::Domain, "tabulated history needs at least 4 samples");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !states[i].allFinite()) {
      fail(ErrorKind::Domain, "tabulated history must be finite");
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      fail(ErrorKind::Domain, "tabulated history times must be strictly increasing");
    }
  }
  const double start = times.back();
  return HistoryFunction(Tabulated{std::move(times), std::move(states)}, start);
}

double HistoryFunction::earliest() const noexcept {
  if (const auto* tab = std::get_if<Tabulated>(&kind_)) return tab->times.front();
  return -std::numeric_limits<double>::infinity();
}

Vec3 HistoryFunction::operator()(double t) const {
  if (t > start_ || t < earliest()) {
    std::ostringstream msg;
    msg << "history evaluated at t = " << t << " outside its domain";
    fail(ErrorKind::Domain, msg.str());
  }
  if (const auto* c = std::get_if<Constant>(&kind_)) return c->value;
  if (std::holds_alternative<Quadratic>(kind_)) return Vec3::Constant(t * t);
  const auto& tab = std::get<Tabulated>(kind_);
  return lagrange4(tab.times, tab.states, t);
}

void Trajectory::push(double t, const Vec3& v, const Vec3& dv) {
  times_.push_back(t);
  states_.push_back(v);
  derivs_.push_back(dv);
}

Vec3 Trajectory::dense_eval(double t) const {
  if (times_.empty() || t < times_.front() || t > times_.back()) {
    std::ostringstream msg;
    msg << "t = " << t << " outside the trajectory";
    fail(ErrorKind::Domain, msg.str());
  }
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  if (it == times_.end()) return states_.back();
  const auto i = static_cast<std::size_t>(it - times_.begin()) - 1;
  if (t == times_[i]) return states_[i];
  const double dt = times_[i + 1] - times_[i];
  const double s = (t - times_[i]) / dt;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * states_[i] + (s3 - 2 * s2 + s) * dt * derivs_[i] +
         (-2 * s3 + 3 * s2) * states_[i + 1] + (s3 - s2) * dt * derivs_[i + 1];
}

Vec3 steady_state(const DelaySystem& sys) {
  sys.validate();
  const Mat3 m = sys.a + sys.b;
  Eigen::FullPivLU<Mat3> lu(m);
  if (!lu.isInvertible()) fail(ErrorKind::Singular, "A + B is singular; no unique steady state");
  return lu.solve(-sys.appeal);
}

double default_step(double tau) {
  constexpr double kMaxStep = 0.05;
  if (!(tau > 0.0)) return kMaxStep;
  const double base = std::min(tau / 20.0, kMaxStep);
  const double n = std::ceil(tau / base - 1e-9);
  return tau / n;
}

Trajectory integrate(const DelaySystem& sys, const HistoryFunction& hist, double t_end,
                     double h) {
  sys.validate();
  const double t0 = hist.start();
  if (!std::isfinite(t_end) || !(t_end > t0)) {
    fail(ErrorKind::Domain, "t_end must be finite and after the history start");
  }
  if (!std::isfinite(h) || !(h > 0.0)) fail(ErrorKind::Domain, "step must be positive");
  const double tau = sys.tau;
  if (tau > 0.0) {
    if (h > tau / 4.0 * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "step " << h << " exceeds tau/4 = " << tau / 4.0;
      fail(ErrorKind::Precondition, msg.str());
    }
    if (hist.earliest() > t0 - tau) {
      fail(ErrorKind::Domain, "history does not cover [start - tau, start]");
    }
  }

  Trajectory traj;
  const Mat3 sum = sys.a + sys.b;
  auto rhs = [&](double t, const Vec3& v) -> Vec3 {
    if (tau == 0.0) return sum * v + sys.appeal;
    const double lag = t - tau;
    const Vec3 delayed = lag <= t0 ? hist(lag) : traj.dense_eval(lag);
    return sys.a * v + sys.b * delayed + sys.appeal;
  };

  Vec3 v = hist(t0);
  traj.push(t0, v, rhs(t0, v));
  const auto steps = static_cast<std::size_t>(std::ceil((t_end - t0) / h - 1e-9));
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t = traj.times_.back();
    const double t_next = k == steps ? t_end : t0 + static_cast<double>(k) * h;
    const double dt = t_next - t;
    const Vec3& k1 = traj.derivs_.back();
    const Vec3 k2 = rhs(t + 0.5 * dt, v + 0.5 * dt * k1);
    const Vec3 k3 = rhs(t + 0.5 * dt, v + 0.5 * dt * k2);
    const Vec3 k4 = rhs(t_next, v + dt * k3);
    const Vec3 next = v + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!next.allFinite() || next.cwiseAbs().maxCoeff() > kDivergence) {
      traj.diverged_ = true;
      break;
    }
    v = next;
    traj.push(t_next, v, rhs(t_next, v));
  }
  return traj;
}

const char* to_string(Behavior b) noexcept {
  switch (b) {
    case Behavior::Converging: return "converging";
    case Behavior::Diverging: return "diverging";
    case Behavior::Inconclusive: return "inconclusive";
  }
  return "?";
}

Classification classify(const Trajectory& traj, const Vec3& v_star, const ClassifyOptions& opts) {
  Classification c;
  const auto& ts = traj.times();
  const auto& vs = traj.states();
  std::vector<double> dist(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) dist[i] = (vs[i] - v_star).norm();

  std::vector<std::size_t> maxima;
  for (std::size_t i = 1; i + 1 < dist.size(); ++i) {
    const double left = dist[i] - dist[i - 1];
    const double right = dist[i + 1] - dist[i];
    if ((left > 0.0 && right <= 0.0) || (left < 0.0 && right >= 0.0)) {
      ++c.extrema;
      if (left > 0.0 && dist[i] > 0.0) maxima.push_back(i);
    }
  }

  if (traj.diverged()) {
    c.behavior = Behavior::Diverging;
    c.slope = std::numeric_limits<double>::infinity();
    return c;
  }
  if (c.extrema < opts.min_extrema) {
    std::ostringstream msg;
    msg << "trajectory has " << c.extrema << " local extrema of |v - v*|, need "
        << opts.min_extrema;
    fail(ErrorKind::Precondition, msg.str());
  }

  const auto skip = static_cast<std::size_t>(opts.transient_fraction * maxima.size());
  const std::size_t used = maxima.size() - skip;
  if (used < 2) fail(ErrorKind::Precondition, "too few envelope maxima to fit");
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t k = skip; k < maxima.size(); ++k) {
    const double t = ts[maxima[k]];
    const double y = std::log(dist[maxima[k]]);
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  const double n = static_cast<double>(used);
  c.slope = (n * sty - st * sy) / (n * stt - st * st);
  if (c.slope < -opts.slope_threshold) {
    c.behavior = Behavior::Converging;
  } else if (c.slope > opts.slope_threshold) {
    c.behavior = Behavior::Diverging;
  } else {
    c.behavior = Behavior::Inconclusive;
  }
  return c;
}

}  // namespace delayswitch
