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

#include "delayswitch/delayswitch.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "core/charpoly.hpp"
#include "core/criteria.hpp"
#include "core/ddesim.hpp"
#include "core/errors.hpp"
#include "core/mikhailov.hpp"
#include "core/switches.hpp"

namespace ds = delayswitch;

struct ds_quasipoly {
  ds::QuasiPolynomial qp;
};
struct ds_schedule {
  ds::SwitchSchedule schedule;
};
struct ds_trace {
  ds::HodographTrace trace;
};
struct ds_system {
  ds::DelaySystem system;
};
struct ds_history {
  ds::HistoryFunction history;
};
struct ds_trajectory {
  ds::Trajectory trajectory;
};

namespace {

thread_local std::string g_last_error;

struct ArgError {
  ds_status status;
  const char* message;
};

ds_status status_of(ds::ErrorKind kind) {
  switch (kind) {
    case ds::ErrorKind::Domain: return DS_ERR_DOMAIN;
    case ds::ErrorKind::Shape: return DS_ERR_SHAPE;
    case ds::ErrorKind::Degenerate: return DS_ERR_DEGENERATE;
    case ds::ErrorKind::Division: return DS_ERR_DIVISION;
    case ds::ErrorKind::Tie: return DS_ERR_TIE;
    case ds::ErrorKind::CriticalDelay: return DS_ERR_CRITICAL_DELAY;
    case ds::ErrorKind::Inconclusive: return DS_ERR_INCONCLUSIVE;
    case ds::ErrorKind::Precondition: return DS_ERR_PRECONDITION;
    case ds::ErrorKind::Unsupported: return DS_ERR_UNSUPPORTED;
    case ds::ErrorKind::Singular: return DS_ERR_SINGULAR;
    case ds::ErrorKind::Endpoint: return DS_ERR_ENDPOINT;
    case ds::ErrorKind::Internal: return DS_ERR_INTERNAL;
  }
  return DS_ERR_INTERNAL;
}

ds_status set_error(ds_status status, std::string message) {
  try {
    g_last_error = std::move(message);
  } catch (...) {
    g_last_error.clear();
  }
  return status;
}

template <typename Fn>
ds_status guard(Fn&& fn) noexcept {
  try {
    fn();
    return DS_OK;
  } catch (const ArgError& e) {
    return set_error(e.status, e.message);
  } catch (const ds::Error& e) {
    return set_error(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(DS_ERR_OUT_OF_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return set_error(DS_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(DS_ERR_INTERNAL, "unknown error");
  }
}

template <typename... Ptr>
void require(Ptr... ptrs) {
  if (((ptrs == nullptr) || ...)) throw ArgError{DS_ERR_NULL_ARGUMENT, "null argument"};
}

void require_index(std::size_t i, std::size_t size) {
  if (i >= size) throw ArgError{DS_ERR_OUT_OF_RANGE, "index out of range"};
}

ds::Mat3 matrix(const double m[9]) {
  ds::Mat3 out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out(r, c) = m[3 * r + c];
  return out;
}

void store(const ds::Mat3& m, double out[9]) {
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out[3 * r + c] = m(r, c);
}

void store(const ds::Vec3& v, double out[3]) {
  for (int k = 0; k < 3; ++k) out[k] = v(k);
}

ds_crossing to_c(const ds::CrossingFrequency& cf) {
  ds_crossing out{};
  out.x = cf.x;
  out.omega = cf.omega;
  out.slope = cf.slope;
  out.destabilizing = cf.direction == ds::Direction::Destabilizing;
  out.has_alpha = cf.alpha.has_value();
  out.alpha = cf.alpha.value_or(0.0);
  return out;
}

template <typename Handle, typename... Args>
void make(Handle** out, Args&&... args) {
  *out = new Handle{std::forward<Args>(args)...};
}

}  // namespace

extern "C" {

const char* ds_status_name(ds_status status) {
  switch (status) {
    case DS_OK: return "ok";
    case DS_ERR_DOMAIN: return "domain";
    case DS_ERR_SHAPE: return "shape";
    case DS_ERR_DEGENERATE: return "degenerate";
    case DS_ERR_DIVISION: return "division";
    case DS_ERR_TIE: return "tie";
    case DS_ERR_CRITICAL_DELAY: return "critical_delay";
    case DS_ERR_INCONCLUSIVE: return "inconclusive";
    case DS_ERR_PRECONDITION: return "precondition";
    case DS_ERR_UNSUPPORTED: return "unsupported";
    case DS_ERR_SINGULAR: return "singular";
    case DS_ERR_ENDPOINT: return "endpoint";
    case DS_ERR_INTERNAL: return "internal";
    case DS_ERR_NULL_ARGUMENT: return "null_argument";
    case DS_ERR_OUT_OF_RANGE: return "out_of_range";
    case DS_ERR_OUT_OF_MEMORY: return "out_of_memory";
  }
  return "unknown";
}

const char* ds_last_error(void) { return g_last_error.c_str(); }

const char* ds_version(void) { return "0.1.0"; }

ds_status ds_quasipoly_create(const double coef[6], ds_quasipoly** out) {
  return guard([&] {
    require(coef, out);
    *out = nullptr;
    make(out, ds::QuasiPolynomial(coef[0], coef[1], coef[2], coef[3], coef[4], coef[5]));
  });
}

ds_status ds_quasipoly_from_companion(const double a[9], const double b[9], ds_quasipoly** out) {
  return guard([&] {
    require(a, b, out);
    *out = nullptr;
    make(out, ds::from_companion(matrix(a), matrix(b)));
  });
}

void ds_quasipoly_free(ds_quasipoly* qp) { delete qp; }

ds_status ds_quasipoly_coefficients(const ds_quasipoly* qp, double coef[6]) {
  return guard([&] {
    require(qp, coef);
    const auto& q = qp->qp;
    const double c[6] = {q.a0(), q.a1(), q.a2(), q.b0(), q.b1(), q.b2()};
    std::copy(c, c + 6, coef);
  });
}

ds_status ds_quasipoly_companion(const ds_quasipoly* qp, double a[9], double b[9]) {
  return guard([&] {
    require(qp, a, b);
    const auto pair = ds::to_companion(qp->qp);
    store(pair.a, a);
    store(pair.b, b);
  });
}

ds_status ds_quasipoly_eval(const ds_quasipoly* qp, double re, double im, double tau,
                            double* out_re, double* out_im) {
  return guard([&] {
    require(qp, out_re, out_im);
    const auto w = ds::eval(qp->qp, {re, im}, tau);
    *out_re = w.real();
    *out_im = w.imag();
  });
}

ds_status ds_real_imag(const ds_quasipoly* qp, double omega, double tau, double* w_r,
                       double* w_i) {
  return guard([&] {
    require(qp, w_r, w_i);
    const auto w = ds::real_imag(qp->qp, omega, tau);
    *w_r = w.re;
    *w_i = w.im;
  });
}

ds_status ds_rhp_count_zero_delay(const ds_quasipoly* qp, int* out) {
  return guard([&] {
    require(qp, out);
    *out = ds::rhp_count_zero_delay(qp->qp);
  });
}

ds_status ds_amplitude_polynomial(const ds_quasipoly* qp, ds_amplitude* out) {
  return guard([&] {
    require(qp, out);
    const auto f = ds::amplitude_polynomial(qp->qp);
    *out = {f.c2, f.c1, f.c0, f.discriminant};
  });
}

ds_status ds_crossing_frequencies(const ds_quasipoly* qp, ds_crossing* out, size_t capacity,
                                  size_t* count) {
  return guard([&] {
    require(qp, count);
    if (capacity > 0) require(out);
    auto crossings = ds::crossing_frequencies(ds::amplitude_polynomial(qp->qp));
    for (auto& cf : crossings) {
      try {
        cf.alpha = ds::crossing_phase(qp->qp, cf);
      } catch (const ds::Error& e) {
        if (e.kind() != ds::ErrorKind::Division) throw;
      }
    }
    *count = crossings.size();
    for (std::size_t i = 0; i < std::min(capacity, crossings.size()); ++i) out[i] = to_c(crossings[i]);
  });
}

ds_status ds_critical_delays(const ds_quasipoly* qp, size_t index, int n_max, double* out,
                             size_t capacity, size_t* count) {
  return guard([&] {
    require(qp, count);
    if (capacity > 0) require(out);
    const auto crossings = ds::crossing_frequencies(ds::amplitude_polynomial(qp->qp));
    require_index(index, crossings.size());
    const auto taus = ds::critical_delays(qp->qp, crossings[index], n_max);
    *count = taus.size();
    std::copy_n(taus.begin(), std::min(capacity, taus.size()), out);
  });
}

ds_status ds_schedule_create(const ds_quasipoly* qp, double tau_max, ds_schedule** out) {
  return guard([&] {
    require(qp, out);
    *out = nullptr;
    make(out, ds::schedule(qp->qp, tau_max));
  });
}

void ds_schedule_free(ds_schedule* s) { delete s; }

ds_status ds_schedule_n_at_zero(const ds_schedule* s, int* out) {
  return guard([&] {
    require(s, out);
    *out = s->schedule.n_at_zero;
  });
}

ds_status ds_schedule_count_at(const ds_schedule* s, double tau, int* out) {
  return guard([&] {
    require(s, out);
    if (!(tau >= 0.0 && tau <= s->schedule.tau_max)) {
      throw ArgError{DS_ERR_OUT_OF_RANGE, "tau outside [0, tau_max]"};
    }
    *out = s->schedule.count_at(tau);
  });
}

ds_status ds_schedule_crossing_count(const ds_schedule* s, size_t* out) {
  return guard([&] {
    require(s, out);
    *out = s->schedule.crossings.size();
  });
}

ds_status ds_schedule_crossing(const ds_schedule* s, size_t i, ds_crossing* out) {
  return guard([&] {
    require(s, out);
    require_index(i, s->schedule.crossings.size());
    *out = to_c(s->schedule.crossings[i]);
  });
}

ds_status ds_schedule_event_count(const ds_schedule* s, size_t* out) {
  return guard([&] {
    require(s, out);
    *out = s->schedule.events.size();
  });
}

ds_status ds_schedule_event(const ds_schedule* s, size_t i, ds_event* out) {
  return guard([&] {
    require(s, out);
    require_index(i, s->schedule.events.size());
    const auto& e = s->schedule.events[i];
    *out = {e.tau, e.delta, e.source, e.n};
  });
}

ds_status ds_schedule_window_count(const ds_schedule* s, size_t* out) {
  return guard([&] {
    require(s, out);
    *out = s->schedule.windows.size();
  });
}

ds_status ds_schedule_window(const ds_schedule* s, size_t i, double* lo, double* hi) {
  return guard([&] {
    require(s, lo, hi);
    require_index(i, s->schedule.windows.size());
    *lo = s->schedule.windows[i].lo;
    *hi = s->schedule.windows[i].hi;
  });
}

ds_status ds_trace_create(const ds_quasipoly* qp, double tau, ds_trace** out) {
  return guard([&] {
    require(qp, out);
    *out = nullptr;
    make(out, ds::trace(qp->qp, tau));
  });
}

void ds_trace_free(ds_trace* t) { delete t; }

ds_status ds_trace_info_get(const ds_trace* t, ds_trace_info* out) {
  return guard([&] {
    require(t, out);
    const auto& tr = t->trace;
    *out = {tr.tau, tr.omega_cut, tr.tail_bound, tr.min_modulus};
  });
}

ds_status ds_trace_sample_count(const ds_trace* t, size_t* out) {
  return guard([&] {
    require(t, out);
    *out = t->trace.samples.size();
  });
}

ds_status ds_trace_sample(const ds_trace* t, size_t i, ds_sample* out) {
  return guard([&] {
    require(t, out);
    require_index(i, t->trace.samples.size());
    const auto& s = t->trace.samples[i];
    *out = {s.omega, s.w_r, s.w_i, s.arg};
  });
}

ds_status ds_trace_verdict(const ds_trace* t, ds_verdict* out, ds_quadrant* quadrants,
                           size_t capacity, size_t* count) {
  return guard([&] {
    require(t, out);
    if (capacity > 0) require(quadrants);
    const auto v = ds::verdict(t->trace);
    *out = {v.total_arg_change, v.n_rhp, v.stable ? 1 : 0};
    if (count != nullptr) *count = v.quadrant_sequence.size();
    for (std::size_t i = 0; i < std::min(capacity, v.quadrant_sequence.size()); ++i) {
      quadrants[i] = static_cast<ds_quadrant>(static_cast<int>(v.quadrant_sequence[i]) + 1);
    }
  });
}

ds_status ds_rhp_count(const ds_quasipoly* qp, double tau, int* out) {
  return guard([&] {
    require(qp, out);
    *out = ds::rhp_count(qp->qp, tau);
  });
}

ds_status ds_check_theorem(const ds_quasipoly* qp, double tau_bar, ds_theorem_report* out) {
  return guard([&] {
    require(qp, out);
    const auto r = ds::check_theorem(qp->qp, tau_bar);
    ds_theorem_report c{};
    c.b0_condition = r.b0_condition;
    c.a1_condition = r.a1_condition;
    c.a2_condition = r.a2_condition;
    c.b_small = r.b_small;
    c.below_upper = r.below_upper;
    c.witness_found = r.witness_found;
    c.has_omega_bar = r.omega_bar.has_value();
    c.omega_bar = r.omega_bar.value_or(0.0);
    c.has_tau_bar = r.tau_bar.has_value();
    c.tau_bar = r.tau_bar.value_or(0.0);
    c.tau_upper = r.tau_upper;
    c.min_wi = r.min_wi;
    c.passed = r.passed;
    *out = c;
  });
}

ds_status ds_corollary_coefficients(double a0, double a1, double a2, double b0, ds_cubic* out) {
  return guard([&] {
    require(out);
    const auto g = ds::corollary_coefficients(a0, a1, a2, b0);
    *out = {g.g3, g.g2, g.g1, g.g0};
  });
}

ds_status ds_corollary_g(const ds_quasipoly* qp, ds_cubic* out) {
  return guard([&] {
    require(qp, out);
    const auto g = ds::corollary_g(qp->qp);
    *out = {g.g3, g.g2, g.g1, g.g0};
  });
}

ds_status ds_check_corollary(const ds_quasipoly* qp, ds_corollary_report* out) {
  return guard([&] {
    require(qp, out);
    const auto r = ds::check_corollary(qp->qp);
    ds_corollary_report c{};
    c.hypotheses = r.hypotheses;
    c.passed = r.passed;
    c.has_g = r.g.has_value();
    if (r.g) c.g = {r.g->g3, r.g->g2, r.g->g1, r.g->g0};
    c.tau_upper = r.tau_upper;
    c.root_count = std::min<std::size_t>(r.roots.size(), 3);
    std::copy_n(r.roots.begin(), c.root_count, c.roots);
    c.has_interval = r.stable_tau_interval.has_value();
    if (r.stable_tau_interval) {
      c.interval_lo = r.stable_tau_interval->lo;
      c.interval_hi = r.stable_tau_interval->hi;
    }
    *out = c;
  });
}

ds_status ds_sturm_count(const double* coeffs, size_t n, double lo, double hi, int* out) {
  return guard([&] {
    require(out);
    if (n > 0) require(coeffs);
    *out = ds::sturm_count(ds::Polynomial(std::vector<double>(coeffs, coeffs + n)), lo, hi);
  });
}

ds_status ds_remark_lower_bound(const ds_quasipoly* qp, double* out) {
  return guard([&] {
    require(qp, out);
    *out = ds::remark_lower_bound(qp->qp);
  });
}

ds_status ds_system_create(const double a[9], const double b[9], const double appeal[3],
                           double tau, ds_system** out) {
  return guard([&] {
    require(a, b, appeal, out);
    *out = nullptr;
    ds::DelaySystem sys;
    sys.a = matrix(a);
    sys.b = matrix(b);
    sys.appeal = ds::Vec3(appeal[0], appeal[1], appeal[2]);
    sys.tau = tau;
    sys.validate();
    make(out, std::move(sys));
  });
}

ds_status ds_system_from_quasipoly(const ds_quasipoly* qp, const double appeal[3], double tau,
                                   ds_system** out) {
  return guard([&] {
    require(qp, appeal, out);
    *out = nullptr;
    make(out, ds::DelaySystem::from_quasipolynomial(
                  qp->qp, ds::Vec3(appeal[0], appeal[1], appeal[2]), tau));
  });
}

void ds_system_free(ds_system* sys) { delete sys; }

ds_status ds_steady_state(const ds_system* sys, double out[3]) {
  return guard([&] {
    require(sys, out);
    store(ds::steady_state(sys->system), out);
  });
}

ds_status ds_history_constant(const double value[3], double start, ds_history** out) {
  return guard([&] {
    require(value, out);
    *out = nullptr;
    make(out, ds::HistoryFunction::constant(ds::Vec3(value[0], value[1], value[2]), start));
  });
}

ds_status ds_history_quadratic(double start, ds_history** out) {
  return guard([&] {
    require(out);
    *out = nullptr;
    make(out, ds::HistoryFunction::quadratic(start));
  });
}

ds_status ds_history_tabulated(const double* times, const double* states, size_t n,
                               ds_history** out) {
  return guard([&] {
    require(times, states, out);
    *out = nullptr;
    std::vector<double> t(times, times + n);
    std::vector<ds::Vec3> s;
    s.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      s.emplace_back(states[3 * i], states[3 * i + 1], states[3 * i + 2]);
    }
    make(out, ds::HistoryFunction::tabulated(std::move(t), std::move(s)));
  });
}

void ds_history_free(ds_history* h) { delete h; }

ds_status ds_default_step(double tau, double* out) {
  return guard([&] {
    require(out);
    if (!std::isfinite(tau) || tau < 0.0) {
      ds::fail(ds::ErrorKind::Domain, "tau must be finite and non-negative");
    }
    *out = ds::default_step(tau);
  });
}

ds_status ds_integrate(const ds_system* sys, const ds_history* hist, double t_end, double h,
                       ds_trajectory** out) {
  return guard([&] {
    require(sys, hist, out);
    *out = nullptr;
    make(out, ds::integrate(sys->system, hist->history, t_end, h));
  });
}

void ds_trajectory_free(ds_trajectory* traj) { delete traj; }

ds_status ds_trajectory_size(const ds_trajectory* traj, size_t* out) {
  return guard([&] {
    require(traj, out);
    *out = traj->trajectory.size();
  });
}

ds_status ds_trajectory_diverged(const ds_trajectory* traj, int* out) {
  return guard([&] {
    require(traj, out);
    *out = traj->trajectory.diverged();
  });
}

ds_status ds_trajectory_node(const ds_trajectory* traj, size_t i, double* t, double state[3]) {
  return guard([&] {
    require(traj, t, state);
    require_index(i, traj->trajectory.size());
    *t = traj->trajectory.times()[i];
    store(traj->trajectory.states()[i], state);
  });
}

ds_status ds_trajectory_dense_eval(const ds_trajectory* traj, double t, double out[3]) {
  return guard([&] {
    require(traj, out);
    const auto& times = traj->trajectory.times();
    if (times.empty() || !(t >= times.front() && t <= times.back())) {
      throw ArgError{DS_ERR_OUT_OF_RANGE, "t outside the trajectory"};
    }
    store(traj->trajectory.dense_eval(t), out);
  });
}

ds_status ds_classify(const ds_trajectory* traj, const double v_star[3],
                      ds_classification* out) {
  return guard([&] {
    require(traj, v_star, out);
    const auto c =
        ds::classify(traj->trajectory, ds::Vec3(v_star[0], v_star[1], v_star[2]));
    ds_behavior b = DS_INCONCLUSIVE;
    if (c.behavior == ds::Behavior::Converging) b = DS_CONVERGING;
    if (c.behavior == ds::Behavior::Diverging) b = DS_DIVERGING;
    *out = {b, c.slope, c.extrema};
  });
}

}  // extern "C"
