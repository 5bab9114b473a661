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

#include <variant>
#include <vector>

#include <Eigen/Core>

#include "charpoly.hpp"

namespace delayswitch {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// v'(t) = A v(t) + B v(t - tau) + appeal.
struct DelaySystem {
  Mat3 a = Mat3::Zero();
  Mat3 b = Mat3::Zero();
  Vec3 appeal = Vec3::Zero();
  double tau = 0.0;

  /// Throws ErrorKind::Domain on non-finite entries or negative tau.
  void validate() const;

  /// Companion-form system for qp with the given forcing and delay.
  static DelaySystem from_quasipolynomial(const QuasiPolynomial& qp, const Vec3& appeal,
                                          double tau);
};

/// Initial data on [start - tau, start].
class HistoryFunction {
 public:
  struct Constant {
    Vec3 value;
  };
  struct Quadratic {};  // v(t) = t^2 in every component
  struct Tabulated {
    std::vector<double> times;
    std::vector<Vec3> states;
  };

  static HistoryFunction constant(const Vec3& value, double start = 0.0);
  /// t -> t^2 with integration starting at `start`; with start = tau the
  /// data covers [0, tau].
  static HistoryFunction quadratic(double start);
  /// At least four strictly increasing samples; start is the last time.
  static HistoryFunction tabulated(std::vector<double> times, std::vector<Vec3> states);

  double start() const noexcept { return start_; }
  /// Earliest time the history can be evaluated at.
  double earliest() const noexcept;
  Vec3 operator()(double t) const;

  const std::variant<Constant, Quadratic, Tabulated>& kind() const noexcept { return kind_; }

 private:
  HistoryFunction(std::variant<Constant, Quadratic, Tabulated> kind, double start)
      : kind_(std::move(kind)), start_(start) {}

  std::variant<Constant, Quadratic, Tabulated> kind_;
  double start_;
};

/// Nodes of an integration run with derivative samples for cubic Hermite
/// dense output.
class Trajectory {
 public:
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<Vec3>& states() const noexcept { return states_; }
  const std::vector<Vec3>& derivatives() const noexcept { return derivs_; }
  std::size_t size() const noexcept { return times_.size(); }
  bool diverged() const noexcept { return diverged_; }

  /// Cubic Hermite interpolant; exact at nodes. t must lie in
  /// [times().front(), times().back()].
  Vec3 dense_eval(double t) const;

 private:
  friend Trajectory integrate(const DelaySystem&, const HistoryFunction&, double, double);

  void push(double t, const Vec3& v, const Vec3& dv);

  std::vector<double> times_;
  std::vector<Vec3> states_;
  std::vector<Vec3> derivs_;
  bool diverged_ = false;
};

/// Solves (A + B) v + appeal = 0. Throws ErrorKind::Singular.
Vec3 steady_state(const DelaySystem& sys);

/// min(tau/20, 0.05), shrunk so that it divides tau exactly.
double default_step(double tau);

/// Classic fourth-order Runge-Kutta over [hist.start(), t_end] with the
/// method of steps: delayed values come from the history before start and
/// from the Hermite interpolant of accepted nodes afterwards. Stops early and
/// flags the trajectory when any component exceeds 1e15 in magnitude.
Trajectory integrate(const DelaySystem& sys, const HistoryFunction& hist, double t_end,
                     double h);

enum class Behavior { Converging, Diverging, Inconclusive };

const char* to_string(Behavior b) noexcept;

struct Classification {
  Behavior behavior = Behavior::Inconclusive;
  double slope = 0.0;      // fitted d/dt log |v - v*| envelope
  std::size_t extrema = 0; // local extrema of |v - v*| found
};

struct ClassifyOptions {
  std::size_t min_extrema = 20;
  double slope_threshold = 1e-4;
  /// Leading fraction of the maxima dropped as transient before fitting.
  double transient_fraction = 0.25;
};

/// Fits the log-envelope of successive maxima of |v(t) - v*|.
Classification classify(const Trajectory& traj, const Vec3& v_star,
                        const ClassifyOptions& opts = {});

}  // namespace delayswitch
