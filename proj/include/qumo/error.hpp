// Copyright 2026 qumo-solver contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qumo {

/// Root of the library's error hierarchy. Everything thrown on purpose
/// derives from this, so callers can catch one type at the boundary.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad inputs: dimension mismatches, out-of-range parameters, contract breaks.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

/// Requests that are well-formed but too large to honor (brute force over
/// 2^40 states, 17-bit encodings, ...).
class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(const std::string& what) : Error(what) {}
};

/// NaN/Inf appeared in solver state. Carries the iteration it was detected at.
class NumericFailure : public Error {
 public:
  NumericFailure(const std::string& what, std::size_t iteration)
      : Error(what + " (iteration " + std::to_string(iteration) + ")"),
        iteration_(iteration) {}
  std::size_t iteration() const { return iteration_; }

 private:
  std::size_t iteration_;
};

/// Operation not defined for the given configuration (e.g. Lyapunov energy
/// with a non-invertible nonlinearity).
class UnsupportedOperation : public Error {
 public:
  explicit UnsupportedOperation(const std::string& what) : Error(what) {}
};

/// Text-format errors. line == 0 means "not line-addressable".
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// optimality_gap with a zero reference; callers fall back to absolute gaps.
class UndefinedGap : public Error {
 public:
  explicit UndefinedGap(const std::string& what) : Error(what) {}
};

/// Metric inputs that contradict each other (best-known worse than both
/// compared objectives).
class DataInconsistency : public Error {
 public:
  explicit DataInconsistency(const std::string& what) : Error(what) {}
};

}  // namespace qumo
