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

#include "qumo/metrics.hpp"

#include <cmath>

#include "qumo/error.hpp"

namespace qumo::metrics {

namespace {
constexpr double kEquality = 1e-9;  // absolute tie window on objective values
}

Tolerance default_tolerance(double reference) {
  Tolerance t;
  t.rel = 0.005;
  t.abs = std::abs(reference) < 1e-6 ? 0.005 : 0.0;
  return t;
}

bool within_tolerance(double a, double a_ref, Tolerance tol) {
  return std::abs(a - a_ref) <= tol.abs + tol.rel * std::abs(a_ref);
}

double success_rate(const std::vector<double>& objectives, double reference,
                    Tolerance tol) {
  if (objectives.empty()) throw InvalidArgument("success_rate: empty objective list");
  std::size_t hits = 0;
  for (double v : objectives)
    if (within_tolerance(v, reference, tol)) ++hits;
  return static_cast<double>(hits) / static_cast<double>(objectives.size());
}

double optimality_gap(double found, double best) {
  if (best == 0.0)
    throw UndefinedGap("optimality_gap: zero reference objective");
  return 100.0 * (found - best) / std::abs(best);
}

Improvement objective_improvement(double f_a, double f_best_rest,
                                  double f_best_known) {
  if (std::abs(f_a - f_best_rest) <= kEquality) return {0.0, false};
  if (f_best_known > f_a + kEquality && f_best_known > f_best_rest + kEquality)
    throw DataInconsistency(
        "objective_improvement: best-known value is worse than both inputs");

  if (f_a < f_best_rest) {
    const double denom = f_best_known - f_best_rest;
    if (std::abs(denom) <= kEquality) return {100.0, true};
    return {100.0 * (f_a - f_best_rest) / denom, false};
  }
  const double denom = f_best_known - f_a;
  if (std::abs(denom) <= kEquality) return {-100.0, true};
  return {-100.0 * (f_best_rest - f_a) / denom, false};
}

}  // namespace qumo::metrics
