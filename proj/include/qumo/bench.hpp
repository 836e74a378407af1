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

// Benchmark harness: runs each solver on each instance with a fixed
// iteration/sweep budget, scores everything against the best reference
// available (explicit value, exhaustive oracle, registry, or best-seen with
// a warning) and emits a CSV that is byte-identical for identical seeds,
// whatever the thread count.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qumo/metrics.hpp"
#include "qumo/model.hpp"

namespace qumo::bench {

enum class SolverKind : std::uint8_t { Aim, Sa, Pt, Hopfield, Sb, Oracle };

std::optional<SolverKind> parse_solver(const std::string& name);
const char* solver_name(SolverKind kind);

struct Instance {
  std::string id;
  QumoProblem problem;
  std::optional<double> reference;  // known best objective, if any
};

struct BenchConfig {
  std::vector<std::uint64_t> seeds = {1};
  double tol_rel = 0.005;
  double tol_abs = 0.0;

  // Per-solver budgets, in iterations/sweeps and independent repeats.
  std::size_t aim_iterations = 1000;
  std::size_t aim_samples = 32;
  bool aim_tune = true;  // two-phase (alpha0, beta0) search per instance
  std::size_t sa_sweeps = 1000;
  std::size_t sa_restarts = 32;
  std::size_t pt_sweeps = 1000;
  std::size_t pt_replicas = 8;
  std::size_t pt_restarts = 4;
  std::size_t hopfield_iterations = 1000;
  std::size_t hopfield_samples = 32;
  std::size_t sb_iterations = 1000;
  std::size_t sb_samples = 32;

  bool oracle_reference = true;  // brute-force references when cheap enough
  double oracle_grid = 1.0 / 128.0;
  unsigned threads = 1;

  std::string registry_path;     // best-known registry CSV (optional)
  bool update_registry = false;  // write improvements back (with provenance)
};

struct BenchRow {
  std::string instance;
  std::string solver;
  double best = 0.0;
  bool has_best = false;
  double reference = 0.0;
  bool has_reference = false;
  double success_rate = -1.0;        // negative = not computed
  double gap_percent = 0.0;
  bool has_gap = false;
  bool gap_is_absolute = false;      // zero reference: absolute difference
  double improvement_percent = 0.0;  // aim rows with competitors only
  bool has_improvement = false;
  std::size_t budget = 0;
  std::string digest;  // stable hash of the solver configuration
  std::string warning;
};

struct BenchReport {
  std::vector<BenchRow> rows;     // one per (instance, solver)
  std::vector<BenchRow> summary;  // one per solver
  std::string to_csv() const;
};

BenchReport run_bench(const std::vector<Instance>& instances,
                      const std::vector<SolverKind>& solvers,
                      const BenchConfig& cfg);

}  // namespace qumo::bench
