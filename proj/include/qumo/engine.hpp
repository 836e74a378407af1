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

// Momentum-annealed gradient descent over the canonical problem:
//
//   x_{t+1} = clip( x_t + dt * [ alpha (Q f_nl(x_t) + b)
//                               - beta(t) x_t
//                               + gamma (x_t - x_{t-1}) ] ),
//
// with beta(t) = beta0 (1 - t/T) decaying linearly, alpha = alpha0 / lambda
// scaled by the spectral radius of Q, f_nl applied elementwise (sign for
// binary variables, identity for continuous ones), and clipping to [-1, 1].
// The Nesterov variant evaluates the gradient at the look-ahead point
// x_t + gamma (x_t - x_{t-1}).
//
// Problems handed to the engine must be in the PlusMinusOne domain.
//
// Samples are independent: each derives its RNG stream from
// seed XOR sample_index through a counter-based generator, so a run is
// reproducible bit-for-bit for any worker count. Blocks of 8 samples are
// advanced together through the batched kernels.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qumo/hwsim.hpp"
#include "qumo/model.hpp"

namespace qumo::engine {

enum class Momentum : std::uint8_t { HeavyBall, Nesterov };
enum class Nonlinearity : std::uint8_t { Sign, Tanh, Clamp };

struct SolverConfig {
  double alpha0 = 1.0;   // scaled gradient weight; alpha = alpha0 / lambda
  double beta0 = 1.0;    // annealing start
  double gamma = 0.9;    // momentum, must stay below 1 for stability
  double dt = 1.0;       // time step
  std::size_t iterations = 1000;  // T
  Momentum momentum = Momentum::HeavyBall;
  Nonlinearity nonlinearity = Nonlinearity::Sign;
  double tanh_gain = 1.0;  // gain when nonlinearity == Tanh (noiseless runs)
  std::size_t samples = 32;
  std::uint64_t seed = 0;
  std::optional<hwsim::NoiseConfig> noise;
  /// Re-project and score every iterate (free in software). Off reproduces
  /// the hardware behavior of reading out only the final state.
  bool track_best = true;
  bool record_trajectory = false;
  unsigned threads = 1;  // sample-block workers; never affects results

  void validate() const;  // throws InvalidArgument
};

struct RunResult {
  Vec best_assignment;     // projected, in the engine (PlusMinusOne) box
  double best_objective = 0.0;
  std::size_t best_iteration = 0;  // iterate index (0..T) where best appeared
  std::size_t best_sample = 0;
  std::vector<double> per_sample_objectives;  // best seen per sample
  /// Raw states x_0..x_T per sample; filled only when record_trajectory.
  std::vector<std::vector<Vec>> trajectories;
  double lambda_used = 1.0;
  bool lambda_converged = true;
};

struct LambdaEstimate {
  double value = 1.0;
  bool converged = true;
};

/// Spectral radius of Q (largest |eigenvalue|) by power iteration with a
/// fixed-seed random start, capped at 10n iterations. Returns 1.0 for Q == 0;
/// a non-converged estimate is flagged rather than thrown.
LambdaEstimate estimate_lambda(const QumoProblem& p);

/// beta0 * (1 - t/T); exact at both endpoints.
double beta_schedule(double beta0, std::size_t t, std::size_t total);

/// Initial iterate of a sample: uniform in [-0.1, 0.1]^n drawn from the
/// sample's counter-based stream. x_{-1} starts equal to x_0.
Vec initial_state(std::uint64_t seed, std::size_t sample_index, std::size_t n);

/// One iterate of the update rule (single-sample API used by tests and the
/// hardware-noise wrapper; `run` advances blocks of samples instead).
/// `lambda` is the scale for alpha; `sample_key` addresses the noise stream.
Vec step(const QumoProblem& p, const Vec& x, const Vec& x_prev,
         const SolverConfig& cfg, std::size_t t, double lambda,
         std::uint64_t sample_key = 0);

RunResult run(const QumoProblem& p, const SolverConfig& cfg);

/// Energy function whose minima the dynamics settle into: discretized
/// kinetic term + objective + annealing integral. Defined for invertible
/// nonlinearities only (identity / tanh); Sign throws UnsupportedOperation.
double lyapunov_energy(const QumoProblem& p, const Vec& x, const Vec& x_prev,
                       const SolverConfig& cfg, std::size_t t);

}  // namespace qumo::engine
