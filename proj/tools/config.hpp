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

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace delayswitch::cli {

/// Parse or validation failure; the message carries a line/column or a field path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HistorySpec {
  enum class Kind { Quadratic, Constant, Tabulated };
  Kind kind = Kind::Quadratic;
  std::array<double, 3> value{};
  std::vector<double> times;
  std::vector<std::array<double, 3>> states;
};

enum class Format { Json, Csv };

struct Config {
  std::optional<std::array<double, 6>> coefficients;  // a0, a1, a2, b0, b1, b2
  std::optional<std::array<double, 9>> a;             // row-major
  std::optional<std::array<double, 9>> b;
  std::array<double, 3> appeal{};
  std::optional<double> tau;
  std::optional<double> tau_max;
  std::optional<HistorySpec> history;
  std::optional<std::string> output_dir;
  Format format = Format::Json;
};

Config parse_config(const std::string& text);
Config load_config(const std::string& path);

}  // namespace delayswitch::cli
