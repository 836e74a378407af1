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

// Problem transforms into the canonical form: penalty mapping of linear
// (in)equality constraints with one continuous slack per inequality,
// unary/binary bit encodings of continuous variables, the QUBO/Ising/max-cut
// equivalences, and the greedy variable-fixing preprocessor. Every transform
// preserves objective values exactly on corresponding assignments.

#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "qumo/model.hpp"

namespace qumo::transforms {

struct LinearConstraint {
  /// Sparse coefficient map: (variable index, coefficient).
  std::vector<std::pair<std::size_t, double>> coeffs;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool is_equality() const { return lo == hi; }
  double value_at(const Vec& x) const;
};

struct ConstrainedProblem {
  QumoProblem base;
  std::vector<LinearConstraint> constraints;
};

struct PenaltyConfig {
  enum class Mode { Auto, Fixed };
  Mode mode = Mode::Auto;
  double p0 = 1.0;  // used when mode == Fixed; must be > 0
};

/// Where each constraint's slack landed, plus the completed bounds and the
/// penalty weight actually applied.
struct SlackMap {
  struct Entry {
    std::optional<std::size_t> slack_index;  // none for equality constraints
    double lo = 0.0, hi = 0.0;               // bounds after completion
    double penalty = 0.0;
  };
  std::vector<Entry> entries;  // one per constraint, in order
  std::size_t original_n = 0;
};

struct PenaltyResult {
  QumoProblem problem;
  SlackMap map;
};

/// Maps each two-sided constraint l <= a.x <= u to the penalty
/// P (a.x + (u-l) s - u)^2 with one continuous slack s in [0,1]; one-sided
/// constraints first get the missing bound completed to the attainable
/// extremum of a.x over the box; equalities get P (a.x - u)^2 with no slack.
PenaltyResult constraints_to_qumo(const ConstrainedProblem& cp,
                                  const PenaltyConfig& pc);

/// True when x (an assignment of the base problem) satisfies every
/// constraint; exact comparisons.
bool feasible(const ConstrainedProblem& cp, const Vec& x);

enum class SlackEncoding { Unary, Binary };

/// How encoded bits reassemble into the original mixed assignment.
struct EncodingMap {
  struct Entry {
    std::size_t source;  // original variable index
    std::vector<std::pair<std::size_t, double>> bits;  // (output index, weight)
  };
  std::vector<Entry> continuous;  // one per continuous variable, in order
  std::vector<std::pair<std::size_t, std::size_t>> binary;  // (source, output)
  std::size_t original_n = 0;

  Vec decode(const Vec& encoded) const;
};

struct EncodedQubo {
  QumoProblem problem;  // pure binary
  EncodingMap map;
};

/// Replaces every continuous variable by a normalized sum of fresh binary
/// variables: Unary uses 2^n_bits equal bits, Binary uses n_bits
/// power-of-two bits. Objective values agree exactly at representable
/// values of the continuous variables.
EncodedQubo slack_to_qubo(const QumoProblem& p, SlackEncoding encoding,
                          unsigned n_bits);

/// All-binary problems only: re-expresses a ZeroOne (QUBO) problem in the
/// PlusMinusOne (Ising) convention or back, via the affine spin map.
QumoProblem qubo_ising_roundtrip(const QumoProblem& p);

struct WeightedEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 0.0;
};

/// Ising problem whose objective satisfies cut(y) == -F(y) for every spin
/// assignment, so minimizing F maximizes the cut.
QumoProblem maxcut_to_ising(const std::vector<WeightedEdge>& edges, std::size_t n);

/// Cut weight of a spin assignment (+-1 entries).
double cut_value(const std::vector<WeightedEdge>& edges, const Vec& spins);

struct FixedSubproblem {
  QumoProblem reduced;
  std::vector<std::size_t> fixed_indices;  // into the original problem
  Vec fixed_values;                        // aligned with fixed_indices
  std::vector<std::size_t> kept_indices;   // reduced var -> original index
};

/// Ranks binary variables by impact |b_i| + 1/2 sum_j |Q_ij|, fixes the top
/// k in all 2^k ways and substitutes them out. The union of the subproblem
/// solution spaces partitions the original space.
std::vector<FixedSubproblem> greedy_fix_preprocess(const QumoProblem& p,
                                                   std::size_t k);

/// Reassembles a full-length assignment from a subproblem solution.
Vec merge_fixed(const FixedSubproblem& sub, const Vec& reduced_solution);

}  // namespace qumo::transforms
