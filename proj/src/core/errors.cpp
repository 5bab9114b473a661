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

#include "errors.hpp"

namespace delayswitch {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Shape: return "shape error";
    case ErrorKind::Degenerate: return "degeneracy error";
    case ErrorKind::Division: return "division error";
    case ErrorKind::Tie: return "tie error";
    case ErrorKind::CriticalDelay: return "critical delay";
    case ErrorKind::Inconclusive: return "inconclusive";
    case ErrorKind::Precondition: return "precondition error";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Singular: return "singularity error";
    case ErrorKind::Endpoint: return "endpoint error";
    case ErrorKind::Internal: return "internal consistency error";
  }
  return "unknown error";
}

}  // namespace delayswitch
