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

#include <stdexcept>
#include <string>

namespace delayswitch {

enum class ErrorKind {
  Domain,         // non-finite or out-of-range argument
  Shape,          // matrices not in companion form
  Degenerate,     // marginal case: imaginary-axis root, double root, zero slope
  Division,       // Q(iw) vanishes, phase cannot be solved
  Tie,            // two switch events coincide
  CriticalDelay,  // hodograph passes through the origin
  Inconclusive,   // truncation bound too loose to decide
  Precondition,   // documented hypothesis violated
  Unsupported,    // input outside the supported model class
  Singular,       // singular linear system
  Endpoint,       // interval endpoint is a root
  Internal        // consistency check failed
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace delayswitch
