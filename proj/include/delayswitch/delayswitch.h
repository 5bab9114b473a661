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

/* C interface to the delayswitch library.
 *
 * Every fallible call returns a ds_status. On failure a message describing
 * the error is available from ds_last_error() on the calling thread until the
 * next failing call on that thread. Handles are opaque and owned by the
 * caller; each *_free function accepts NULL. Matrices are 3x3 row-major.
 */
#ifndef DELAYSWITCH_DELAYSWITCH_H_
#define DELAYSWITCH_DELAYSWITCH_H_

#include <stddef.h>

#if defined(_WIN32)
#if defined(DELAYSWITCH_BUILDING)
#define DS_API __declspec(dllexport)
#else
#define DS_API __declspec(dllimport)
#endif
#elif defined(DELAYSWITCH_BUILDING)
#define DS_API __attribute__((visibility("default")))
#else
#define DS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ds_status {
  DS_OK = 0,
  DS_ERR_DOMAIN = 1,
  DS_ERR_SHAPE = 2,
  DS_ERR_DEGENERATE = 3,
  DS_ERR_DIVISION = 4,
  DS_ERR_TIE = 5,
  DS_ERR_CRITICAL_DELAY = 6,
  DS_ERR_INCONCLUSIVE = 7,
  DS_ERR_PRECONDITION = 8,
  DS_ERR_UNSUPPORTED = 9,
  DS_ERR_SINGULAR = 10,
  DS_ERR_ENDPOINT = 11,
  DS_ERR_INTERNAL = 12,
  DS_ERR_NULL_ARGUMENT = 13,
  DS_ERR_OUT_OF_RANGE = 14,
  DS_ERR_OUT_OF_MEMORY = 15
} ds_status;

DS_API const char* ds_status_name(ds_status status);
DS_API const char* ds_last_error(void);
DS_API const char* ds_version(void);

/* ---- characteristic quasi-polynomial ---------------------------------- */

typedef struct ds_quasipoly ds_quasipoly;

/* coef = {a0, a1, a2, b0, b1, b2}. */
DS_API ds_status ds_quasipoly_create(const double coef[6], ds_quasipoly** out);
DS_API ds_status ds_quasipoly_from_companion(const double a[9], const double b[9],
                                             ds_quasipoly** out);
DS_API void ds_quasipoly_free(ds_quasipoly* qp);
DS_API ds_status ds_quasipoly_coefficients(const ds_quasipoly* qp, double coef[6]);
DS_API ds_status ds_quasipoly_companion(const ds_quasipoly* qp, double a[9], double b[9]);
DS_API ds_status ds_quasipoly_eval(const ds_quasipoly* qp, double re, double im, double tau,
                                   double* out_re, double* out_im);
/* W(i omega) split as W_r + i W_i. */
DS_API ds_status ds_real_imag(const ds_quasipoly* qp, double omega, double tau, double* w_r,
                              double* w_i);
DS_API ds_status ds_rhp_count_zero_delay(const ds_quasipoly* qp, int* out);

/* ---- switches ---------------------------------------------------------- */

typedef struct ds_amplitude {
  double c2, c1, c0;
  double discriminant;
} ds_amplitude;

typedef struct ds_crossing {
  double x;
  double omega;
  double slope;
  int destabilizing;
  int has_alpha;
  double alpha;
} ds_crossing;

typedef struct ds_event {
  double tau;
  int delta;
  int source; /* 1-based crossing index */
  int n;
} ds_event;

DS_API ds_status ds_amplitude_polynomial(const ds_quasipoly* qp, ds_amplitude* out);
/* Writes up to `capacity` crossings (at most 3 exist) with alpha resolved
 * where Q(i omega) is nonzero; *count receives the number found. */
DS_API ds_status ds_crossing_frequencies(const ds_quasipoly* qp, ds_crossing* out,
                                         size_t capacity, size_t* count);
/* Delays n = 0..n_max of crossing `index` (0-based, ascending omega). */
DS_API ds_status ds_critical_delays(const ds_quasipoly* qp, size_t index, int n_max,
                                    double* out, size_t capacity, size_t* count);

typedef struct ds_schedule ds_schedule;

DS_API ds_status ds_schedule_create(const ds_quasipoly* qp, double tau_max, ds_schedule** out);
DS_API void ds_schedule_free(ds_schedule* s);
DS_API ds_status ds_schedule_n_at_zero(const ds_schedule* s, int* out);
DS_API ds_status ds_schedule_count_at(const ds_schedule* s, double tau, int* out);
DS_API ds_status ds_schedule_crossing_count(const ds_schedule* s, size_t* out);
DS_API ds_status ds_schedule_crossing(const ds_schedule* s, size_t i, ds_crossing* out);
DS_API ds_status ds_schedule_event_count(const ds_schedule* s, size_t* out);
DS_API ds_status ds_schedule_event(const ds_schedule* s, size_t i, ds_event* out);
DS_API ds_status ds_schedule_window_count(const ds_schedule* s, size_t* out);
DS_API ds_status ds_schedule_window(const ds_schedule* s, size_t i, double* lo, double* hi);

/* ---- hodograph --------------------------------------------------------- */

typedef struct ds_trace ds_trace;

typedef struct ds_sample {
  double omega;
  double w_r;
  double w_i;
  double arg;
} ds_sample;

typedef struct ds_trace_info {
  double tau;
  double omega_cut;
  double tail_bound;
  double min_modulus;
} ds_trace_info;

typedef enum ds_quadrant { DS_QUADRANT_I = 1, DS_QUADRANT_II, DS_QUADRANT_III, DS_QUADRANT_IV } ds_quadrant;

typedef struct ds_verdict {
  double total_arg_change;
  int n_rhp;
  int stable;
} ds_verdict;

DS_API ds_status ds_trace_create(const ds_quasipoly* qp, double tau, ds_trace** out);
DS_API void ds_trace_free(ds_trace* t);
DS_API ds_status ds_trace_info_get(const ds_trace* t, ds_trace_info* out);
DS_API ds_status ds_trace_sample_count(const ds_trace* t, size_t* out);
DS_API ds_status ds_trace_sample(const ds_trace* t, size_t i, ds_sample* out);
/* quadrants may be NULL when capacity is 0; *count receives the full
 * sequence length. */
DS_API ds_status ds_trace_verdict(const ds_trace* t, ds_verdict* out, ds_quadrant* quadrants,
                                  size_t capacity, size_t* count);
DS_API ds_status ds_rhp_count(const ds_quasipoly* qp, double tau, int* out);

/* ---- criteria ---------------------------------------------------------- */

typedef struct ds_theorem_report {
  int b0_condition;
  int a1_condition;
  int a2_condition;
  int b_small;
  int below_upper;
  int witness_found;
  int has_omega_bar;
  double omega_bar;
  int has_tau_bar;
  double tau_bar;
  double tau_upper;
  double min_wi;
  int passed;
} ds_theorem_report;

typedef struct ds_cubic {
  double g3, g2, g1, g0;
} ds_cubic;

typedef struct ds_corollary_report {
  int hypotheses;
  int passed;
  int has_g;
  ds_cubic g;
  double tau_upper;
  size_t root_count;
  double roots[3];
  int has_interval;
  double interval_lo;
  double interval_hi;
} ds_corollary_report;

DS_API ds_status ds_check_theorem(const ds_quasipoly* qp, double tau_bar, ds_theorem_report* out);
DS_API ds_status ds_corollary_coefficients(double a0, double a1, double a2, double b0,
                                           ds_cubic* out);
DS_API ds_status ds_corollary_g(const ds_quasipoly* qp, ds_cubic* out);
DS_API ds_status ds_check_corollary(const ds_quasipoly* qp, ds_corollary_report* out);
/* Distinct real roots in (lo, hi); coefficients in ascending order. */
DS_API ds_status ds_sturm_count(const double* coeffs, size_t n, double lo, double hi, int* out);
DS_API ds_status ds_remark_lower_bound(const ds_quasipoly* qp, double* out);

/* ---- simulation -------------------------------------------------------- */

typedef struct ds_system ds_system;
typedef struct ds_history ds_history;
typedef struct ds_trajectory ds_trajectory;

typedef enum ds_behavior { DS_CONVERGING = 0, DS_DIVERGING = 1, DS_INCONCLUSIVE = 2 } ds_behavior;

typedef struct ds_classification {
  ds_behavior behavior;
  double slope;
  size_t extrema;
} ds_classification;

DS_API ds_status ds_system_create(const double a[9], const double b[9], const double appeal[3],
                                  double tau, ds_system** out);
DS_API ds_status ds_system_from_quasipoly(const ds_quasipoly* qp, const double appeal[3],
                                          double tau, ds_system** out);
DS_API void ds_system_free(ds_system* sys);
DS_API ds_status ds_steady_state(const ds_system* sys, double out[3]);

DS_API ds_status ds_history_constant(const double value[3], double start, ds_history** out);
/* t -> t^2 componentwise; integration starts at `start`. */
DS_API ds_status ds_history_quadratic(double start, ds_history** out);
/* n samples; states holds 3n values, one row per sample. */
DS_API ds_status ds_history_tabulated(const double* times, const double* states, size_t n,
                                      ds_history** out);
DS_API void ds_history_free(ds_history* h);

DS_API ds_status ds_default_step(double tau, double* out);
DS_API ds_status ds_integrate(const ds_system* sys, const ds_history* hist, double t_end,
                              double h, ds_trajectory** out);
DS_API void ds_trajectory_free(ds_trajectory* traj);
DS_API ds_status ds_trajectory_size(const ds_trajectory* traj, size_t* out);
DS_API ds_status ds_trajectory_diverged(const ds_trajectory* traj, int* out);
DS_API ds_status ds_trajectory_node(const ds_trajectory* traj, size_t i, double* t,
                                    double state[3]);
DS_API ds_status ds_trajectory_dense_eval(const ds_trajectory* traj, double t, double out[3]);
DS_API ds_status ds_classify(const ds_trajectory* traj, const double v_star[3],
                             ds_classification* out);

#ifdef __cplusplus
}
#endif

#endif /* DELAYSWITCH_DELAYSWITCH_H_ */
