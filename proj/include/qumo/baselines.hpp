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

// Reference and competing solvers: the exhaustive oracle every success-rate
// number is anchored to, Metropolis annealing and tempering, first-order
// saturating dynamics, and the bifurcation-style second-order update.

#include <cstddef>
#include <cstdint>

#include "qumo/engine.hpp"
#include "qumo/model.hpp"

namespace qumo::baselines {

struct BruteForceResult {
  Vec assignment;
  double objective = 0.0;
};

/// Exhaustive minimum over binary patterns x continuous grid points (grid
/// step = grid_resolution * box width). Ties keep the lexicographically
/// first assignment in enumeration order. Ground truth for success rates.
BruteForceResult brute_force(const QumoProblem& p,
                             double grid_resolution = 1.0 / 128.0);

struct SaConfig {
  std::size_t sweeps = 1000;   // budget; one sweep = n flip attempts
  std::size_t restarts = 1;
  double t_hot = 0.0;          // 0 = calibrate from 100 probe flips
  double t_cold = 0.0;         // 0 = t_hot / 1000
  std::uint64_t seed = 0;
  bool paranoid_check = false;  // recheck incremental energies periodically
  unsigned threads = 1;
};

/// Single-flip Metropolis with a geometric temperature schedule; improving
/// flips always accepted. All-binary problems only.
engine::RunResult simulated_annealing(const QumoProblem& p, const SaConfig& cfg);

struct PtConfig {
  std::size_t sweeps = 1000;
  std::size_t replicas = 8;
  std::size_t restarts = 1;
  double t_hot = 0.0;
  double t_cold = 0.0;
  std::uint64_t seed = 0;
  bool paranoid_check = false;
  unsigned threads = 1;
};

/// Fixed geometric temperature ladder; each sweep is a Metropolis pass per
/// replica plus neighbor swaps accepted with min(1, exp(dbeta * dE)).
engine::RunResult parallel_tempering(const QumoProblem& p, const PtConfig& cfg);

struct HopfieldConfig {
  double alpha0 = 1.0;
  double beta = 0.1;  // constant dissipation
  double dt = 1.0;
  double tanh_gain = 1.0;
  std::size_t iterations = 1000;
  std::size_t samples = 32;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// First-order dynamics x' = x + dt (alpha (Q tanh(x) + b) - beta x), with
/// the engine's initialization, clipping and projected readout.
engine::RunResult hopfield_run(const QumoProblem& p, const HopfieldConfig& cfg);

struct SbConfig {
  double a0 = 1.0;
  double c0 = 0.0;  // 0 = heuristic scale from the weight matrix
  double dt = 0.5;
  std::size_t iterations = 1000;
  std::size_t samples = 32;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Symplectic-Euler bifurcation update with a linear pump ramp a(t): 0 -> a0.
/// Walls at |x| = 1 clamp the position and zero the velocity, which is what
/// keeps the gamma = 1 style momentum stable. All-binary problems only.
engine::RunResult simulated_bifurcation_run(const QumoProblem& p,
                                            const SbConfig& cfg);

}  // namespace qumo::baselines
