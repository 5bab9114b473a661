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

#include <vector>

#include "charpoly.hpp"

namespace delayswitch {

struct HodographSample {
  double omega = 0.0;
  double w_r = 0.0;
  double w_i = 0.0;
  double arg = 0.0;  // unwrapped, radians
};

/// W(i omega) sampled from omega = 0 to omega_cut. Consecutive samples differ
/// in argument by less than pi/2, and for omega >= omega_cut the argument
/// stays within tail_bound of its limit.
struct HodographTrace {
  std::vector<HodographSample> samples;
  double tau = 0.0;
  double omega_cut = 0.0;
  double tail_bound = 0.0;
  double min_modulus = 0.0;
};

struct TraceOptions {
  double initial_step = 0.01;
  int max_depth = 40;
  /// Accepted argument increment between samples.
  double max_arg_step = 0.7853981633974483;  // pi/4
  /// A trace whose minimum |W| falls below this times qp.scale() sits on a
  /// critical delay.
  double critical_rel_tol = 1e-8;
  /// Target for the certified tail bound.
  double tail_target = 1e-6;
};

/// Adaptive trace of the Mikhailov hodograph for a fixed delay.
/// Throws ErrorKind::CriticalDelay when the curve passes through the origin.
HodographTrace trace(const QuasiPolynomial& qp, double tau,
                     const TraceOptions& opts = {});

enum class Quadrant { I, II, III, IV };

const char* to_string(Quadrant q) noexcept;

struct StabilityVerdict {
  double total_arg_change = 0.0;
  int n_rhp = 0;
  bool stable = false;
  std::vector<Quadrant> quadrant_sequence;
};

/// Reads the right-half-plane root count off the total argument change:
/// n_rhp = (3 pi/2 - change) / pi.
StabilityVerdict verdict(const HodographTrace& trace);

int rhp_count(const QuasiPolynomial& qp, double tau, const TraceOptions& opts = {});

}  // namespace delayswitch
