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

#include "doctest.h"

#include <cmath>
#include <cstring>
#include <numbers>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "delayswitch/delayswitch.h"

namespace {

const double kExample[6] = {0.16, -0.23, 0.97, -0.14, 0.0, 0.0};
const double kAppeal[3] = {1.0, 1.0, -2.0};

struct Qp {
  ds_quasipoly* p = nullptr;
  explicit Qp(const double c[6]) { REQUIRE(ds_quasipoly_create(c, &p) == DS_OK); }
  ~Qp() { ds_quasipoly_free(p); }
};

}  // namespace

TEST_CASE("status names") {
  std::set<std::string> names;
  for (int s = DS_OK; s <= DS_ERR_OUT_OF_MEMORY; ++s) {
    names.insert(ds_status_name(static_cast<ds_status>(s)));
  }
  CHECK(names.size() == 16);
  CHECK(std::string(ds_status_name(DS_OK)) == "ok");
  CHECK(std::string(ds_version()) == "0.1.0");
}

TEST_CASE("argument errors") {
  ds_quasipoly* p = reinterpret_cast<ds_quasipoly*>(0x1);
  CHECK(ds_quasipoly_create(nullptr, &p) == DS_ERR_NULL_ARGUMENT);
  CHECK(std::strlen(ds_last_error()) > 0);
  CHECK(ds_quasipoly_create(kExample, nullptr) == DS_ERR_NULL_ARGUMENT);

  const double bad[6] = {0.14, -0.23, 0.97, -0.14, 0.0, 0.0};
  CHECK(ds_quasipoly_create(bad, &p) == DS_ERR_DOMAIN);
  CHECK(p == nullptr);
  CHECK(std::string(ds_last_error()).find("a0 + b0") != std::string::npos);

  Qp q(kExample);
  ds_schedule* s = nullptr;
  REQUIRE(ds_schedule_create(q.p, 5.0, &s) == DS_OK);
  ds_event e;
  CHECK(ds_schedule_event(s, 99, &e) == DS_ERR_OUT_OF_RANGE);
  int n = 0;
  CHECK(ds_schedule_count_at(s, 6.0, &n) == DS_ERR_OUT_OF_RANGE);
  ds_schedule_free(s);

  ds_quasipoly_free(nullptr);
  ds_schedule_free(nullptr);
  ds_trace_free(nullptr);
  ds_system_free(nullptr);
  ds_history_free(nullptr);
  ds_trajectory_free(nullptr);
}

TEST_CASE("last error is per thread") {
  ds_quasipoly* p = nullptr;
  const double bad[6] = {0.14, -0.23, 0.97, -0.14, 0.0, 0.0};
  REQUIRE(ds_quasipoly_create(bad, &p) == DS_ERR_DOMAIN);
  const std::string mine = ds_last_error();
  std::string theirs;
  std::thread([&] {
    theirs = ds_last_error();
    ds_quasipoly_create(nullptr, &p);
    theirs += "|" + std::string(ds_last_error());
  }).join();
  CHECK(theirs.rfind("|", 0) == 0);
  CHECK(theirs.size() > 1);
  CHECK(std::string(ds_last_error()) == mine);
}

TEST_CASE("error kinds map to statuses") {
  ds_quasipoly* p = nullptr;
  const double a[9] = {0, 0, -0.16, -1, 0, -0.23, 0, -1, -0.97};
  double b[9] = {0, 0, 0.14, 0, 0, 0, 0, 0, 0};
  b[0] = 1.0;
  CHECK(ds_quasipoly_from_companion(a, b, &p) == DS_ERR_SHAPE);
  CHECK(std::string(ds_last_error()).find("(1,1)") != std::string::npos);

  {
    // F = (x - 1)^2 (x + 2) = x^3 - 3x + 2 from a2 = 2, a1 = a2^2 / 2 = 2,
    // a1^2 - 2 a0 a2 = -3 and a0^2 - b0^2 = 2.
    const double c[6] = {1.75, 2.0, 2.0, -std::sqrt(17.0) / 4.0, 0.0, 0.0};
    Qp q(c);
    ds_amplitude f;
    REQUIRE(ds_amplitude_polynomial(q.p, &f) == DS_OK);
    CHECK(f.c2 == 0.0);
    CHECK(f.c1 == doctest::Approx(-3.0));
    CHECK(f.c0 == doctest::Approx(2.0));
    ds_crossing cf[3];
    size_t count = 0;
    CHECK(ds_crossing_frequencies(q.p, cf, 3, &count) == DS_ERR_DEGENERATE);
  }
  {
    Qp q(kExample);
    ds_trace* t = nullptr;
    CHECK(ds_trace_create(q.p, 1.8690193592, &t) == DS_ERR_CRITICAL_DELAY);
    CHECK(t == nullptr);
  }
  {
    const double c[6] = {0.16, -0.23, 0.97, -0.14, 0.05, 0.0};
    Qp q(c);
    ds_theorem_report r;
    CHECK(ds_check_theorem(q.p, 2.5, &r) == DS_ERR_UNSUPPORTED);
  }
  {
    const double c[6] = {0.1, 1.0, 1.0, 0.2, 0.0, 0.0};
    Qp q(c);
    ds_schedule* s = nullptr;
    CHECK(ds_schedule_create(q.p, 5.0, &s) == DS_ERR_PRECONDITION);
  }
  {
    const double c[6] = {0.16, 0.23, 0.97, -0.14, 0.0, 0.0};
    Qp q(c);
    ds_cubic g;
    CHECK(ds_corollary_g(q.p, &g) == DS_ERR_PRECONDITION);
  }
  {
    const double lin[2] = {-1.0, 1.0};
    int n = 0;
    CHECK(ds_sturm_count(lin, 2, 1.0, 2.0, &n) == DS_ERR_ENDPOINT);
  }
  {
    const double eye[9] = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    const double neg[9] = {-1, 0, 0, 0, -1, 0, 0, 0, -1};
    ds_system* sys = nullptr;
    REQUIRE(ds_system_create(eye, neg, kAppeal, 1.0, &sys) == DS_OK);
    double v[3];
    CHECK(ds_steady_state(sys, v) == DS_ERR_SINGULAR);
    ds_system_free(sys);
    CHECK(ds_system_create(eye, neg, kAppeal, -1.0, &sys) == DS_ERR_DOMAIN);
  }
}

TEST_CASE("worked example through the C interface") {
  Qp q(kExample);
  double re = 0, im = 0;
  REQUIRE(ds_quasipoly_eval(q.p, 0.0, 0.0, 3.0, &re, &im) == DS_OK);
  CHECK(re == doctest::Approx(0.02));
  CHECK(im == 0.0);

  double a[9], b[9];
  REQUIRE(ds_quasipoly_companion(q.p, a, b) == DS_OK);
  ds_quasipoly* back = nullptr;
  REQUIRE(ds_quasipoly_from_companion(a, b, &back) == DS_OK);
  double coef[6];
  REQUIRE(ds_quasipoly_coefficients(back, coef) == DS_OK);
  for (int i = 0; i < 6; ++i) CHECK(coef[i] == kExample[i]);
  ds_quasipoly_free(back);

  int n0 = -1;
  REQUIRE(ds_rhp_count_zero_delay(q.p, &n0) == DS_OK);
  CHECK(n0 == 2);

  ds_amplitude f;
  REQUIRE(ds_amplitude_polynomial(q.p, &f) == DS_OK);
  CHECK(std::abs(f.c2 - 1.4009) < 1e-12);
  CHECK(std::abs(f.c1 + 0.2575) < 1e-12);
  CHECK(std::abs(f.c0 - 0.006) < 1e-12);

  ds_crossing cf[3];
  size_t count = 0;
  REQUIRE(ds_crossing_frequencies(q.p, cf, 3, &count) == DS_OK);
  REQUIRE(count == 2);
  CHECK(std::abs(cf[0].omega - 0.16581393714) < 1e-9);
  CHECK(std::abs(cf[1].omega - 0.37310947798) < 1e-9);
  CHECK(cf[0].destabilizing == 0);
  CHECK(cf[1].destabilizing == 1);
  CHECK(cf[0].has_alpha == 1);

  double taus[4];
  REQUIRE(ds_critical_delays(q.p, 0, 3, taus, 4, &count) == DS_OK);
  CHECK(count == 4);
  CHECK(std::abs(taus[0] - 1.8690193592) < 1e-8);
  CHECK(std::abs((taus[1] - taus[0]) - 2.0 * std::numbers::pi / cf[0].omega) < 1e-9);
  CHECK(ds_critical_delays(q.p, 2, 3, taus, 4, &count) == DS_ERR_OUT_OF_RANGE);

  ds_schedule* s = nullptr;
  REQUIRE(ds_schedule_create(q.p, 5.0, &s) == DS_OK);
  size_t ne = 0, nw = 0;
  REQUIRE(ds_schedule_event_count(s, &ne) == DS_OK);
  REQUIRE(ds_schedule_window_count(s, &nw) == DS_OK);
  CHECK(ne == 2);
  ds_event e0, e1;
  REQUIRE(ds_schedule_event(s, 0, &e0) == DS_OK);
  REQUIRE(ds_schedule_event(s, 1, &e1) == DS_OK);
  CHECK(e0.delta == -2);
  CHECK(e0.source == 1);
  CHECK(e1.delta == 2);
  CHECK(std::abs(e1.tau - 3.7294989938) < 1e-8);
  REQUIRE(nw == 1);
  double lo = 0, hi = 0;
  REQUIRE(ds_schedule_window(s, 0, &lo, &hi) == DS_OK);
  CHECK(lo == e0.tau);
  CHECK(hi == e1.tau);
  int n = -1;
  REQUIRE(ds_schedule_count_at(s, 2.5, &n) == DS_OK);
  CHECK(n == 0);
  ds_schedule_free(s);

  ds_trace* t = nullptr;
  REQUIRE(ds_trace_create(q.p, 2.5, &t) == DS_OK);
  ds_verdict v;
  size_t nq = 0;
  REQUIRE(ds_trace_verdict(t, &v, nullptr, 0, &nq) == DS_OK);
  CHECK(v.stable == 1);
  CHECK(v.n_rhp == 0);
  CHECK(std::abs(v.total_arg_change - 1.5 * std::numbers::pi) < 1e-6);
  std::vector<ds_quadrant> quads(nq);
  REQUIRE(ds_trace_verdict(t, &v, quads.data(), quads.size(), &nq) == DS_OK);
  CHECK(quads == std::vector<ds_quadrant>{DS_QUADRANT_I, DS_QUADRANT_II, DS_QUADRANT_III});
  size_t ns = 0;
  REQUIRE(ds_trace_sample_count(t, &ns) == DS_OK);
  ds_sample first;
  REQUIRE(ds_trace_sample(t, 0, &first) == DS_OK);
  CHECK(first.omega == 0.0);
  CHECK(first.w_r == doctest::Approx(0.02));
  ds_trace_info info;
  REQUIRE(ds_trace_info_get(t, &info) == DS_OK);
  CHECK(info.tail_bound < 1e-6);
  ds_trace_free(t);

  REQUIRE(ds_rhp_count(q.p, 0.0, &n) == DS_OK);
  CHECK(n == 2);
  REQUIRE(ds_rhp_count(q.p, 4.0, &n) == DS_OK);
  CHECK(n == 2);

  ds_theorem_report tr;
  REQUIRE(ds_check_theorem(q.p, 2.5, &tr) == DS_OK);
  CHECK(tr.passed == 1);
  CHECK(tr.has_tau_bar == 1);
  CHECK(std::abs(tr.tau_upper - 3.7225183) < 1e-6);

  ds_corollary_report cr;
  REQUIRE(ds_check_corollary(q.p, &cr) == DS_OK);
  CHECK(cr.passed == 1);
  CHECK(cr.root_count == 2);
  CHECK(std::abs(cr.interval_lo - 1.869884) < 1e-5);
  CHECK(std::abs(cr.interval_hi - 3.410874) < 1e-5);

  const double gpoly[4] = {cr.g.g0, cr.g.g1, cr.g.g2, cr.g.g3};
  REQUIRE(ds_sturm_count(gpoly, 4, 0.0, 3.7224, &n) == DS_OK);
  CHECK(n == 2);

  ds_cubic g;
  REQUIRE(ds_corollary_coefficients(1.0, -0.0, 1.0, -1.0, &g) == DS_OK);
  CHECK(g.g3 == 0.5);
  CHECK(g.g1 == -1.0);

  double bound = 0;
  REQUIRE(ds_remark_lower_bound(q.p, &bound) == DS_OK);
  CHECK(std::abs(bound - 0.23 / 0.14) < 1e-12);
}

TEST_CASE("simulation through the C interface") {
  Qp q(kExample);
  ds_system* sys = nullptr;
  REQUIRE(ds_system_from_quasipoly(q.p, kAppeal, 2.5, &sys) == DS_OK);
  double vs[3];
  REQUIRE(ds_steady_state(sys, vs) == DS_OK);
  CHECK(std::abs(vs[0] + 10.5) < 1e-9);
  CHECK(std::abs(vs[1] + 50.5) < 1e-9);
  CHECK(std::abs(vs[2] - 50.0) < 1e-9);

  ds_history* hist = nullptr;
  REQUIRE(ds_history_quadratic(2.5, &hist) == DS_OK);
  double h = 0;
  REQUIRE(ds_default_step(2.5, &h) == DS_OK);
  CHECK(h == doctest::Approx(0.05));
  ds_trajectory* traj = nullptr;
  CHECK(ds_integrate(sys, hist, 400.0, 1.0, &traj) == DS_ERR_PRECONDITION);
  REQUIRE(ds_integrate(sys, hist, 400.0, h, &traj) == DS_OK);
  size_t size = 0;
  REQUIRE(ds_trajectory_size(traj, &size) == DS_OK);
  CHECK(size > 7000);
  int diverged = 1;
  REQUIRE(ds_trajectory_diverged(traj, &diverged) == DS_OK);
  CHECK(diverged == 0);
  double t0 = 0, x0[3];
  REQUIRE(ds_trajectory_node(traj, 0, &t0, x0) == DS_OK);
  CHECK(t0 == 2.5);
  CHECK(x0[0] == 6.25);
  double mid[3];
  REQUIRE(ds_trajectory_dense_eval(traj, 100.01, mid) == DS_OK);
  CHECK(ds_trajectory_dense_eval(traj, 401.0, mid) == DS_ERR_OUT_OF_RANGE);
  ds_classification c;
  REQUIRE(ds_classify(traj, vs, &c) == DS_OK);
  CHECK(c.behavior == DS_CONVERGING);
  CHECK(c.slope < -1e-4);
  ds_trajectory_free(traj);
  ds_history_free(hist);

  const double times[3] = {-1, -0.5, 0};
  const double states[9] = {};
  CHECK(ds_history_tabulated(times, states, 3, &hist) == DS_ERR_DOMAIN);
  ds_system_free(sys);
}
