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
#include <vector>

namespace qumo::metrics {

/// Combined tolerance test: |a - a_ref| <= abs + rel * |a_ref|.
struct Tolerance {
  double abs = 0.0;
  double rel = 0.0;
};

/// Default solution-quality tolerance (99.5%): rel 0.005, with abs 0.005
/// stepping in for near-zero references.
Tolerance default_tolerance(double reference);

bool within_tolerance(double a, double a_ref, Tolerance tol);

/// Fraction of objectives within tolerance of the reference.
double success_rate(const std::vector<double>& objectives, double reference,
                    Tolerance tol);

/// 100 * (found - best) / |best|; 0 means optimal, positive means worse.
/// Throws UndefinedGap when best == 0.
double optimality_gap(double found, double best);

struct Improvement {
  double percent = 0.0;
  /// Set when a zero denominator forced the +-100% convention.
  bool pinned = false;
};

/// Three-case solution-quality comparison of a solver against the best
/// competing result, anchored at the best-known value (minimization):
///   +100 * (f_a - f_rest) / (f_known - f_rest)  when f_a is strictly better,
///   0                                           when equal (1e-9 absolute),
///   -100 * (f_rest - f_a) / (f_known - f_a)     when worse.
/// Zero denominators pin the result to +-100 with the flag set. Throws
/// DataInconsistency when f_known is worse than both inputs.
Improvement objective_improvement(double f_a, double f_best_rest,
                                  double f_best_known);

}  // namespace qumo::metrics
