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

// Emulation of the analog hardware's deviations from the ideal dynamics:
// per-iteration Gaussian state noise, a saturating transfer curve standing in
// for the amplifier nonlinearity, zeroed momentum, and the offset/scale
// representation that keeps modulator weights nonnegative.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qumo/model.hpp"

namespace qumo::engine {
struct SolverConfig;
}

namespace qumo::hwsim {

struct NoiseConfig {
  /// Std of additive Gaussian state noise, in units of full-scale
  /// amplitude 1.0 (so the 3% / 0.2% levels are 0.03 / 0.002).
  double sigma = 0.0;
  /// Gain of the tanh transfer curve used for binary variables when the
  /// Tanh nonlinearity is selected.
  double transfer_gain = 5.0;
  bool force_zero_momentum = false;
  bool nonneg_weights = false;
};

/// Gaussian noise levels reported for the hardware cross-validation runs.
inline constexpr double kSigmaQumo = 0.03;
inline constexpr double kSigmaQubo = 0.002;

/// One noisy iterate: the ideal update with `nc` applied (momentum zeroed if
/// requested, additive noise before clipping). With sigma == 0,
/// force_zero_momentum == false and the Sign nonlinearity this is
/// bit-identical to the ideal engine step.
Vec noisy_step_wrapper(const QumoProblem& p, const Vec& x, const Vec& x_prev,
                       const engine::SolverConfig& cfg, const NoiseConfig& nc,
                       std::size_t t, double lambda, std::uint64_t sample_key);

/// Splits Q into a nonnegative matrix plus a rank-one offset:
///   Q = Q_plus + offset_c * J   (J all ones),
/// so Q x == Q_plus x + offset_c * sum(x) * e for every x.
struct NonnegDecomposition {
  std::vector<double> q_plus;  // row-major dense, entries >= 0
  double offset_c = 0.0;       // min(0, min_ij Q_ij)
};
NonnegDecomposition nonneg_decompose(const SymWeights& q);

/// First iteration index t at which every elementwise change across the
/// trailing `window` states is below tol; empty if the trajectory never
/// settles. Indices refer to positions in `trajectory`.
std::optional<std::size_t> steady_state_detect(const std::vector<Vec>& trajectory,
                                               std::size_t window, double tol);

}  // namespace qumo::hwsim
