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

#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "config.hpp"
#include "delayswitch/delayswitch.h"
#include "json.hpp"

namespace delayswitch::cli {
namespace {

using nlohmann::json;

class AnalysisError : public std::runtime_error {
 public:
  AnalysisError(ds_status status, const std::string& message)
      : std::runtime_error(message), status_(status) {}
  ds_status status() const noexcept { return status_; }

 private:
  ds_status status_;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check(ds_status s) {
  if (s != DS_OK) throw AnalysisError(s, ds_last_error());
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const noexcept { Free(p); }
};
using QuasiPtr = std::unique_ptr<ds_quasipoly, Deleter<ds_quasipoly, ds_quasipoly_free>>;
using SchedulePtr = std::unique_ptr<ds_schedule, Deleter<ds_schedule, ds_schedule_free>>;
using TracePtr = std::unique_ptr<ds_trace, Deleter<ds_trace, ds_trace_free>>;
using SystemPtr = std::unique_ptr<ds_system, Deleter<ds_system, ds_system_free>>;
using HistoryPtr = std::unique_ptr<ds_history, Deleter<ds_history, ds_history_free>>;
using TrajectoryPtr =
    std::unique_ptr<ds_trajectory, Deleter<ds_trajectory, ds_trajectory_free>>;

template <typename Ptr, typename Fn>
Ptr create(Fn&& fn) {
  typename Ptr::pointer raw = nullptr;
  check(fn(&raw));
  return Ptr(raw);
}

QuasiPtr make_quasipoly(const Config& cfg) {
  if (cfg.coefficients) {
    return create<QuasiPtr>([&](ds_quasipoly** p) { return ds_quasipoly_create(cfg.coefficients->data(), p); });
  }
  return create<QuasiPtr>(
      [&](ds_quasipoly** p) { return ds_quasipoly_from_companion(cfg.a->data(), cfg.b->data(), p); });
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Table {
  std::string header;
  std::vector<std::string> rows;

  std::string text() const {
    std::string s = header + "\n";
    for (const auto& r : rows) s += r + "\n";
    return s;
  }
};

struct Output {
  json summary;
  std::optional<Table> table;
};

double resolve(const std::optional<double>& flag, const std::optional<double>& config,
               const char* what) {
  if (flag) return *flag;
  if (config) return *config;
  throw UsageError(std::string("missing ") + what);
}

json crossing_json(const ds_crossing& c) {
  return {{"x", c.x},
          {"omega", c.omega},
          {"slope", c.slope},
          {"direction", c.destabilizing ? "destabilizing" : "stabilizing"},
          {"alpha", c.has_alpha ? json(c.alpha) : json(nullptr)}};
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << text;
  if (!f) throw ConfigError("field 'output_dir': cannot write " + path.string());
}

void emit(const Config& cfg, const std::string& name, const Output& o, std::ostream& out) {
  const std::string summary = o.summary.dump(2) + "\n";
  if (cfg.output_dir) {
    const std::filesystem::path dir(*cfg.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("field 'output_dir': " + ec.message());
    write_file(dir / (name + ".json"), summary);
    if (o.table) write_file(dir / (name + ".csv"), o.table->text());
  }
  if (cfg.format == Format::Csv && o.table) {
    out << o.table->text();
  } else {
    out << summary;
  }
}

Output analyze(const Config& cfg) {
  const auto qp = make_quasipoly(cfg);
  ds_amplitude f;
  check(ds_amplitude_polynomial(qp.get(), &f));
  ds_crossing cf[3];
  std::size_t count = 0;
  check(ds_crossing_frequencies(qp.get(), cf, 3, &count));

  Output o;
  o.summary["amplitude"] = {{"c2", f.c2}, {"c1", f.c1}, {"c0", f.c0}, {"discriminant", f.discriminant}};
  o.summary["crossings"] = json::array();
  Table t{"x,omega,direction,slope,alpha", {}};
  for (std::size_t i = 0; i < count; ++i) {
    o.summary["crossings"].push_back(crossing_json(cf[i]));
    t.rows.push_back(num(cf[i].x) + "," + num(cf[i].omega) + "," +
                     (cf[i].destabilizing ? "destabilizing" : "stabilizing") + "," +
                     num(cf[i].slope) + "," + (cf[i].has_alpha ? num(cf[i].alpha) : ""));
  }
  o.table = std::move(t);
  return o;
}

Output switches(const Config& cfg, double tau_max) {
  const auto qp = make_quasipoly(cfg);
  const auto s = create<SchedulePtr>([&](ds_schedule** p) { return ds_schedule_create(qp.get(), tau_max, p); });

  Output o;
  int n0 = 0;
  check(ds_schedule_n_at_zero(s.get(), &n0));
  o.summary["tau_max"] = tau_max;
  o.summary["n_at_zero"] = n0;

  std::size_t n = 0;
  check(ds_schedule_crossing_count(s.get(), &n));
  o.summary["crossings"] = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    ds_crossing c;
    check(ds_schedule_crossing(s.get(), i, &c));
    o.summary["crossings"].push_back(crossing_json(c));
  }

  check(ds_schedule_event_count(s.get(), &n));
  o.summary["events"] = json::array();
  Table t{"tau,delta,source_j,n", {}};
  for (std::size_t i = 0; i < n; ++i) {
    ds_event e;
    check(ds_schedule_event(s.get(), i, &e));
    o.summary["events"].push_back({{"tau", e.tau}, {"delta", e.delta}, {"source_j", e.source}, {"n", e.n}});
    char delta[8];
    std::snprintf(delta, sizeof delta, "%+d", e.delta);
    t.rows.push_back(num(e.tau) + "," + delta + "," + std::to_string(e.source) + "," +
                     std::to_string(e.n));
  }

  check(ds_schedule_window_count(s.get(), &n));
  o.summary["windows"] = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    double lo = 0, hi = 0;
    check(ds_schedule_window(s.get(), i, &lo, &hi));
    o.summary["windows"].push_back({{"lo", lo}, {"hi", hi}});
  }
  o.table = std::move(t);
  return o;
}

const char* quadrant_name(ds_quadrant q) {
  switch (q) {
    case DS_QUADRANT_I: return "I";
    case DS_QUADRANT_II: return "II";
    case DS_QUADRANT_III: return "III";
    case DS_QUADRANT_IV: return "IV";
  }
  return "?";
}

Output hodograph(const Config& cfg, double tau) {
  const auto qp = make_quasipoly(cfg);
  const auto tr = create<TracePtr>([&](ds_trace** p) { return ds_trace_create(qp.get(), tau, p); });
  ds_trace_info info;
  check(ds_trace_info_get(tr.get(), &info));
  ds_verdict v;
  std::size_t nq = 0;
  check(ds_trace_verdict(tr.get(), &v, nullptr, 0, &nq));
  std::vector<ds_quadrant> quads(nq);
  check(ds_trace_verdict(tr.get(), &v, quads.data(), quads.size(), &nq));

  Output o;
  o.summary["tau"] = info.tau;
  o.summary["omega_cut"] = info.omega_cut;
  o.summary["tail_bound"] = info.tail_bound;
  o.summary["min_modulus"] = info.min_modulus;
  json q = json::array();
  for (auto x : quads) q.push_back(quadrant_name(x));
  o.summary["verdict"] = {{"total_arg_change", v.total_arg_change},
                          {"n_rhp", v.n_rhp},
                          {"stable", v.stable != 0},
                          {"quadrants", q}};

  std::size_t n = 0;
  check(ds_trace_sample_count(tr.get(), &n));
  o.summary["samples"] = json::array();
  Table t{"omega,w_r,w_i,arg", {}};
  t.rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ds_sample s;
    check(ds_trace_sample(tr.get(), i, &s));
    o.summary["samples"].push_back({{"omega", s.omega}, {"w_r", s.w_r}, {"w_i", s.w_i}, {"arg", s.arg}});
    t.rows.push_back(num(s.omega) + "," + num(s.w_r) + "," + num(s.w_i) + "," + num(s.arg));
  }
  o.table = std::move(t);
  return o;
}

Output check_criteria(const Config& cfg, std::optional<double> tau_bar) {
  const auto qp = make_quasipoly(cfg);
  Output o;
  o.summary["tau_bar"] = tau_bar ? json(*tau_bar) : json(nullptr);
  o.summary["theorem"] = nullptr;
  if (tau_bar) {
    ds_theorem_report r;
    check(ds_check_theorem(qp.get(), *tau_bar, &r));
    o.summary["theorem"] = {
        {"conditions",
         {{"b0_between_minus_a0_and_zero", r.b0_condition != 0},
          {"a1_negative", r.a1_condition != 0},
          {"a2_above_bound", r.a2_condition != 0},
          {"b1_b2_zero", r.b_small != 0},
          {"tau_below_upper", r.below_upper != 0},
          {"witness_found", r.witness_found != 0}}},
        {"omega_bar", r.has_omega_bar ? json(r.omega_bar) : json(nullptr)},
        {"tau_upper", r.tau_upper},
        {"min_wi", r.min_wi},
        {"passed", r.passed != 0}};
  }

  ds_corollary_report c;
  check(ds_check_corollary(qp.get(), &c));
  json roots = json::array();
  for (std::size_t i = 0; i < c.root_count; ++i) roots.push_back(c.roots[i]);
  o.summary["corollary"] = {
      {"hypotheses", c.hypotheses != 0},
      {"passed", c.passed != 0},
      {"g", c.has_g ? json{{"g3", c.g.g3}, {"g2", c.g.g2}, {"g1", c.g.g1}, {"g0", c.g.g0}}
                    : json(nullptr)},
      {"tau_upper", c.tau_upper},
      {"roots", roots},
      {"stable_tau_interval", c.has_interval ? json{{"lo", c.interval_lo}, {"hi", c.interval_hi}}
                                             : json(nullptr)}};

  double bound = 0.0;
  check(ds_remark_lower_bound(qp.get(), &bound));
  o.summary["remark"] = {{"lower_bound", bound}};
  return o;
}

HistoryPtr make_history(const Config& cfg, double tau) {
  const HistorySpec spec = cfg.history.value_or(HistorySpec{});
  switch (spec.kind) {
    case HistorySpec::Kind::Quadratic:
      return create<HistoryPtr>([&](ds_history** p) { return ds_history_quadratic(tau, p); });
    case HistorySpec::Kind::Constant:
      return create<HistoryPtr>(
          [&](ds_history** p) { return ds_history_constant(spec.value.data(), tau, p); });
    case HistorySpec::Kind::Tabulated: {
      std::vector<double> flat;
      for (const auto& s : spec.states) flat.insert(flat.end(), s.begin(), s.end());
      return create<HistoryPtr>([&](ds_history** p) {
        return ds_history_tabulated(spec.times.data(), flat.data(), spec.times.size(), p);
      });
    }
  }
  throw std::logic_error("unknown history kind");
}

const char* history_name(const Config& cfg) {
  switch (cfg.history.value_or(HistorySpec{}).kind) {
    case HistorySpec::Kind::Quadratic: return "quadratic";
    case HistorySpec::Kind::Constant: return "constant";
    case HistorySpec::Kind::Tabulated: return "tabulated";
  }
  return "?";
}

Output simulate(const Config& cfg, double tau, double t_end, std::optional<double> step) {
  SystemPtr sys;
  if (cfg.coefficients) {
    const auto qp = make_quasipoly(cfg);
    sys = create<SystemPtr>(
        [&](ds_system** p) { return ds_system_from_quasipoly(qp.get(), cfg.appeal.data(), tau, p); });
  } else {
    sys = create<SystemPtr>([&](ds_system** p) {
      return ds_system_create(cfg.a->data(), cfg.b->data(), cfg.appeal.data(), tau, p);
    });
  }
  double h = 0.0;
  if (step) {
    h = *step;
  } else {
    check(ds_default_step(tau, &h));
  }
  const auto hist = make_history(cfg, tau);
  const auto traj = create<TrajectoryPtr>(
      [&](ds_trajectory** p) { return ds_integrate(sys.get(), hist.get(), t_end, h, p); });
  double vs[3];
  check(ds_steady_state(sys.get(), vs));
  ds_classification c;
  check(ds_classify(traj.get(), vs, &c));
  int diverged = 0;
  check(ds_trajectory_diverged(traj.get(), &diverged));
  std::size_t n = 0;
  check(ds_trajectory_size(traj.get(), &n));

  static const char* behaviors[] = {"converging", "diverging", "inconclusive"};
  Output o;
  o.summary["tau"] = tau;
  o.summary["t_end"] = t_end;
  o.summary["step"] = h;
  o.summary["history"] = history_name(cfg);
  o.summary["steady_state"] = {vs[0], vs[1], vs[2]};
  o.summary["diverged"] = diverged != 0;
  o.summary["nodes"] = n;
  o.summary["classification"] = {
      {"behavior", behaviors[c.behavior]}, {"slope", c.slope}, {"extrema", c.extrema}};
  o.summary["trajectory"] = json::array();
  Table t{"t,x,y,z", {}};
  t.rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double ti = 0, v[3];
    check(ds_trajectory_node(traj.get(), i, &ti, v));
    o.summary["trajectory"].push_back({{"t", ti}, {"x", v[0]}, {"y", v[1]}, {"z", v[2]}});
    t.rows.push_back(num(ti) + "," + num(v[0]) + "," + num(v[1]) + "," + num(v[2]));
  }
  o.table = std::move(t);
  return o;
}

unsigned sweep_threads() {
  const char* env = std::getenv("DELAYSWITCH_THREADS");
  if (env == nullptr || *env == '\0') return std::max(1u, std::thread::hardware_concurrency());
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(env, &end, 10);
  if (errno != 0 || *end != '\0' || v <= 0 || v > 4096) {
    throw UsageError(std::string("DELAYSWITCH_THREADS must be a positive integer, got '") + env + "'");
  }
  return static_cast<unsigned>(v);
}

Output sweep(const Config& cfg, double from, double to, int points) {
  if (!(from >= 0.0) || !(to >= from)) throw UsageError("need 0 <= --tau-from <= --tau-to");
  if (points < 1) throw UsageError("--points must be at least 1");
  if (points == 1 && from != to) throw UsageError("--points 1 needs --tau-from equal to --tau-to");
  const unsigned workers = std::min<unsigned>(sweep_threads(), static_cast<unsigned>(points));
  const auto qp = make_quasipoly(cfg);

  const auto count = static_cast<std::size_t>(points);
  std::vector<double> taus(count);
  for (std::size_t k = 0; k < count; ++k) {
    taus[k] = count == 1 ? from : from + (to - from) * static_cast<double>(k) / static_cast<double>(count - 1);
  }
  taus.back() = to;

  std::vector<std::optional<int>> n_rhp(count);
  std::vector<std::string> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      int n = 0;
      if (ds_rhp_count(qp.get(), taus[k], &n) == DS_OK) {
        n_rhp[k] = n;
      } else {
        errors[k] = ds_last_error();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  Output o;
  o.summary["tau_from"] = from;
  o.summary["tau_to"] = to;
  o.summary["points"] = json::array();
  Table t{"tau,n_rhp", {}};
  for (std::size_t k = 0; k < count; ++k) {
    json p = {{"tau", taus[k]}, {"n_rhp", n_rhp[k] ? json(*n_rhp[k]) : json(nullptr)}};
    if (!n_rhp[k]) p["error"] = errors[k];
    o.summary["points"].push_back(std::move(p));
    t.rows.push_back(num(taus[k]) + "," + (n_rhp[k] ? std::to_string(*n_rhp[k]) : ""));
  }
  o.table = std::move(t);
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stability switch analysis for three-variable linear systems with one delay",
               "delayswitch"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ds_version());

  std::string config_path;
  std::optional<double> tau, tau_max, tau_bar, t_end, step, tau_from, tau_to;
  int points = 0;
  std::optional<std::string> format;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "JSON configuration file")->required();
    sub->add_option("--format", format, "Override the configured output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  auto* analyze_cmd = app.add_subcommand("analyze", "Amplitude cubic and crossing frequencies");
  add_common(analyze_cmd);
  auto* switches_cmd = app.add_subcommand("switches", "Stability switch events and windows");
  add_common(switches_cmd);
  switches_cmd->add_option("--tau-max", tau_max, "Upper end of the delay range");
  auto* hodograph_cmd = app.add_subcommand("hodograph", "Trace W(i omega) and count unstable roots");
  add_common(hodograph_cmd);
  hodograph_cmd->add_option("--tau", tau, "Delay");
  auto* check_cmd = app.add_subcommand("check", "Sufficient stability conditions");
  add_common(check_cmd);
  check_cmd->add_option("--tau-bar", tau_bar, "Delay to test against the sufficient condition");
  auto* simulate_cmd = app.add_subcommand("simulate", "Integrate the delay system");
  add_common(simulate_cmd);
  simulate_cmd->add_option("--tau", tau, "Delay");
  simulate_cmd->add_option("--t-end", t_end, "Final time (default 400)");
  simulate_cmd->add_option("--step", step, "Step size (default: delay-aligned, at most 0.05)");
  auto* sweep_cmd = app.add_subcommand("sweep", "Unstable root count over a delay grid");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--tau-from", tau_from, "First delay")->required();
  sweep_cmd->add_option("--tau-to", tau_to, "Last delay")->required();
  sweep_cmd->add_option("--points", points, "Number of grid points")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Config cfg = load_config(config_path);
    if (format) cfg.format = *format == "csv" ? Format::Csv : Format::Json;
    if (*analyze_cmd) {
      emit(cfg, "analyze", analyze(cfg), out);
    } else if (*switches_cmd) {
      emit(cfg, "switches", switches(cfg, resolve(tau_max, cfg.tau_max, "--tau-max (or tau_max in the config)")), out);
    } else if (*hodograph_cmd) {
      emit(cfg, "hodograph", hodograph(cfg, resolve(tau, cfg.tau, "--tau (or tau in the config)")), out);
    } else if (*check_cmd) {
      emit(cfg, "check", check_criteria(cfg, tau_bar ? tau_bar : cfg.tau), out);
    } else if (*simulate_cmd) {
      const double d = resolve(tau, cfg.tau, "--tau (or tau in the config)");
      emit(cfg, "simulate", simulate(cfg, d, t_end.value_or(400.0), step), out);
    } else if (*sweep_cmd) {
      emit(cfg, "sweep", sweep(cfg, *tau_from, *tau_to, points), out);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const AnalysisError& e) {
    err << "error (" << ds_status_name(e.status()) << "): " << e.what() << "\n";
    return kExitAnalysis;
  }
  return kExitOk;
}

}  // namespace delayswitch::cli
