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

// Two-phase black-box search over (alpha0, beta0): a cheap log-space
// exploration grid, dynamic bound expansion when winners sit on a grid edge,
// then a deep search over the best pairs with full budgets.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qumo/engine.hpp"
#include "qumo/model.hpp"

namespace qumo::tuner {

struct TunePlan {
  double alpha_lo = 1e-2, alpha_hi = 1e1;
  double beta_lo = 1e-2, beta_hi = 1e1;
  std::size_t grid_alpha = 8, grid_beta = 8;
  std::size_t explore_iterations = 200;
  std::size_t explore_samples = 16;
  std::size_t top_k = 4;
  std::size_t deep_iterations = 2000;
  std::size_t deep_samples = 256;
  std::size_t max_expansions = 2;
  std::uint64_t seed = 0;
  /// Everything except (alpha0, beta0, iterations, samples, seed) is taken
  /// from here: momentum, nonlinearity, noise, dt, threads.
  engine::SolverConfig base;

  void validate() const;
};

struct GridPoint {
  double alpha0 = 0.0, beta0 = 0.0;
  double best = 0.0;  // best objective the exploration run reached
  double mean = 0.0;  // mean of per-sample objectives
  bool failed = false;
};

struct ExpansionEvent {
  char axis = 'a';     // 'a' or 'b'
  bool upper = false;  // which edge moved
  double new_lo = 0.0, new_hi = 0.0;
};

struct ExploreResult {
  std::vector<GridPoint> ranked;  // best first; failed points last
  std::vector<double> alpha_axis, beta_axis;
  std::vector<ExpansionEvent> expansions;
  bool expansion_cap_hit = false;
};

struct TuneResult {
  std::vector<GridPoint> ranked;      // final exploration ranking
  std::vector<GridPoint> deep_stats;  // per chosen pair, min-tracked
  /// Full run per chosen pair, aligned with deep_stats. Callers that care
  /// about sampling success (rather than the single best value) pick their
  /// pair from these.
  std::vector<engine::RunResult> deep_runs;
  engine::RunResult best_run;
  double best_alpha0 = 0.0, best_beta0 = 0.0;
  std::vector<ExpansionEvent> expansions;
  bool expansion_cap_hit = false;
};

/// Log-uniform axis: exact endpoints, constant consecutive ratio.
std::vector<double> log_axis(double lo, double hi, std::size_t count);

/// Seed of the engine run at one grid point; shared by both phases so a
/// deep run with exploration budgets reproduces the exploration run.
std::uint64_t point_seed(std::uint64_t plan_seed, double alpha0, double beta0);

/// Runs the engine at every grid point with exploration budgets and ranks
/// pairs by best objective (ties: mean, then lexicographic); a point that
/// throws ranks last instead of aborting the sweep.
ExploreResult explore(const QumoProblem& p, const TunePlan& plan);

/// While any top-k pair sits on a grid edge, extends that axis by a decade
/// in that direction, explores the new strip and merges it into the
/// ranking; stops after max_expansions (flagged). Updates plan bounds.
ExploreResult expand_bounds(const QumoProblem& p, TunePlan& plan,
                            ExploreResult er);

/// Full-budget runs over the chosen pairs. Each pair's exploration result is
/// carried forward, so more budget never ranks worse.
TuneResult deep_search(const QumoProblem& p, const TunePlan& plan,
                       const std::vector<GridPoint>& chosen);

/// explore + expand_bounds + deep_search over the top-k pairs.
TuneResult tune(const QumoProblem& p, TunePlan plan);

}  // namespace qumo::tuner
