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

#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace delayswitch::cli {
namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw ConfigError("field '" + field + "': " + what);
}

// Numbers may be JSON numbers or decimal strings; strings are parsed exactly.
double number(const json& j, const std::string& field) {
  double v = 0.0;
  if (j.is_number()) {
    v = j.get<double>();
  } else if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const char* first = s.data();
    const char* last = first + s.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || s.empty()) {
      field_error(field, "'" + s + "' is not a decimal number");
    }
  } else {
    field_error(field, "expected a number or a decimal string");
  }
  if (!std::isfinite(v)) field_error(field, "must be finite");
  return v;
}

template <std::size_t N>
std::array<double, N> vector_of(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != N) {
    field_error(field, "expected an array of " + std::to_string(N) + " numbers");
  }
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = number(j[i], field + "[" + std::to_string(i) + "]");
  return out;
}

std::array<double, 9> matrix_of(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) field_error(field, "expected a 3x3 array of rows");
  std::array<double, 9> out{};
  for (std::size_t r = 0; r < 3; ++r) {
    const auto row = vector_of<3>(j[r], field + "[" + std::to_string(r) + "]");
    for (std::size_t c = 0; c < 3; ++c) out[3 * r + c] = row[c];
  }
  return out;
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!known.contains(key)) {
      field_error(where.empty() ? key : where + "." + key, "unknown field");
    }
  }
}

std::array<double, 6> coefficients_of(const json& j) {
  if (!j.is_object()) field_error("coefficients", "expected an object");
  static const char* names[6] = {"a0", "a1", "a2", "b0", "b1", "b2"};
  reject_unknown(j, {names, names + 6}, "coefficients");
  std::array<double, 6> out{};
  for (std::size_t i = 0; i < 6; ++i) {
    const std::string field = std::string("coefficients.") + names[i];
    if (!j.contains(names[i])) field_error(field, "missing");
    out[i] = number(j.at(names[i]), field);
  }
  return out;
}

HistorySpec history_of(const json& j) {
  if (!j.is_object()) field_error("history", "expected an object");
  if (!j.contains("kind") || !j.at("kind").is_string()) field_error("history.kind", "missing");
  const auto kind = j.at("kind").get<std::string>();
  HistorySpec h;
  if (kind == "quadratic") {
    reject_unknown(j, {"kind"}, "history");
  } else if (kind == "constant") {
    reject_unknown(j, {"kind", "value"}, "history");
    h.kind = HistorySpec::Kind::Constant;
    if (!j.contains("value")) field_error("history.value", "missing");
    h.value = vector_of<3>(j.at("value"), "history.value");
  } else if (kind == "tabulated") {
    reject_unknown(j, {"kind", "times", "states"}, "history");
    h.kind = HistorySpec::Kind::Tabulated;
    if (!j.contains("times") || !j.at("times").is_array()) field_error("history.times", "expected an array");
    if (!j.contains("states") || !j.at("states").is_array()) {
      field_error("history.states", "expected an array");
    }
    const auto& times = j.at("times");
    const auto& states = j.at("states");
    if (times.size() != states.size()) {
      field_error("history.states", "needs one row per entry of history.times");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
      const auto idx = "[" + std::to_string(i) + "]";
      h.times.push_back(number(times[i], "history.times" + idx));
      h.states.push_back(vector_of<3>(states[i], "history.states" + idx));
    }
  } else {
    field_error("history.kind", "expected quadratic, constant or tabulated");
  }
  return h;
}

std::string position_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

Config parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    if (const auto colon = what.rfind(": "); colon != std::string::npos) what = what.substr(colon + 2);
    throw ConfigError(position_of(text, e.byte) + ": " + what);
  }
  if (!doc.is_object()) throw ConfigError("line 1, column 1: top level must be an object");
  reject_unknown(doc,
                 {"coefficients", "matrices", "appeal", "tau", "tau_max", "history", "output_dir",
                  "format"},
                 "");

  Config cfg;
  const bool has_coef = doc.contains("coefficients");
  const bool has_mat = doc.contains("matrices");
  if (has_coef == has_mat) {
    field_error("coefficients", "exactly one of 'coefficients' and 'matrices' is required");
  }
  if (has_coef) cfg.coefficients = coefficients_of(doc.at("coefficients"));
  if (has_mat) {
    const auto& m = doc.at("matrices");
    if (!m.is_object()) field_error("matrices", "expected an object with A and B");
    reject_unknown(m, {"A", "B"}, "matrices");
    if (!m.contains("A")) field_error("matrices.A", "missing");
    if (!m.contains("B")) field_error("matrices.B", "missing");
    cfg.a = matrix_of(m.at("A"), "matrices.A");
    cfg.b = matrix_of(m.at("B"), "matrices.B");
  }
  if (doc.contains("appeal")) cfg.appeal = vector_of<3>(doc.at("appeal"), "appeal");
  if (doc.contains("tau")) {
    cfg.tau = number(doc.at("tau"), "tau");
    if (*cfg.tau < 0.0) field_error("tau", "must be non-negative");
  }
  if (doc.contains("tau_max")) {
    cfg.tau_max = number(doc.at("tau_max"), "tau_max");
    if (*cfg.tau_max <= 0.0) field_error("tau_max", "must be positive");
  }
  if (doc.contains("history")) cfg.history = history_of(doc.at("history"));
  if (doc.contains("output_dir")) {
    const auto& d = doc.at("output_dir");
    if (!d.is_string() || d.get<std::string>().empty()) {
      field_error("output_dir", "expected a non-empty path string");
    }
    cfg.output_dir = d.get<std::string>();
  }
  if (doc.contains("format")) {
    const auto& f = doc.at("format");
    if (f == "json") {
      cfg.format = Format::Json;
    } else if (f == "csv") {
      cfg.format = Format::Csv;
    } else {
      field_error("format", "expected \"csv\" or \"json\"");
    }
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace delayswitch::cli
