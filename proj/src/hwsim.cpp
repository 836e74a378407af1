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

#include "qumo/hwsim.hpp"

#include <algorithm>
#include <cmath>

#include "qumo/engine.hpp"
#include "qumo/error.hpp"

namespace qumo::hwsim {

Vec noisy_step_wrapper(const QumoProblem& p, const Vec& x, const Vec& x_prev,
                       const engine::SolverConfig& cfg, const NoiseConfig& nc,
                       std::size_t t, double lambda, std::uint64_t sample_key) {
  engine::SolverConfig noisy = cfg;
  noisy.noise = nc;
  return engine::step(p, x, x_prev, noisy, t, lambda, sample_key);
}

NonnegDecomposition nonneg_decompose(const SymWeights& q) {
  const std::size_t n = q.size();
  NonnegDecomposition d;
  d.q_plus = q.to_dense();
  double min_entry = 0.0;
  for (double v : d.q_plus) min_entry = std::min(min_entry, v);
  d.offset_c = min_entry;  // min(0, min_ij Q_ij)
  if (d.offset_c < 0.0) {
    for (double& v : d.q_plus) v -= d.offset_c;
  }
  (void)n;
  return d;
}

std::optional<std::size_t> steady_state_detect(const std::vector<Vec>& trajectory,
                                               std::size_t window, double tol) {
  if (window < 2) throw InvalidArgument("steady_state_detect: window must be >= 2");
  if (trajectory.size() < window)
    throw InvalidArgument("steady_state_detect: window longer than trajectory");

  for (std::size_t t = window - 1; t < trajectory.size(); ++t) {
    bool steady = true;
    for (std::size_t s = t - window + 2; s <= t && steady; ++s) {
      const Vec& a = trajectory[s];
      const Vec& b = trajectory[s - 1];
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) >= tol) {
          steady = false;
          break;
        }
      }
    }
    if (steady) return t;
  }
  return std::nullopt;
}

}  // namespace qumo::hwsim
