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

#include "qumo/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "qumo/error.hpp"
#include "qumo/kernels.hpp"
#include "qumo/parallel.hpp"
#include "qumo/rng.hpp"

namespace qumo::engine {

namespace {

constexpr std::size_t B = kernels::kBlock;

// Counter domains for the per-sample streams (ctr_hi top byte).
constexpr std::uint64_t kInitDomain = std::uint64_t{0} << 56;
constexpr std::uint64_t kNoiseDomain = std::uint64_t{1} << 56;

// Samples start jittered around zero: an exact zero start is a fixed point
// of the sign dynamics, and the hardware's near-zero intensities correspond
// to a small symmetric neighborhood.
constexpr double kInitAmplitude = 0.1;

double nl_binary(double z, Nonlinearity nl, double gain) {
  switch (nl) {
    case Nonlinearity::Sign:
      return z > 0.0 ? 1.0 : (z < 0.0 ? -1.0 : 0.0);
    case Nonlinearity::Tanh:
      return std::tanh(gain * z);
    case Nonlinearity::Clamp:
      return std::min(1.0, std::max(-1.0, z));
  }
  return z;
}

double effective_gain(const SolverConfig& cfg) {
  return cfg.noise ? cfg.noise->transfer_gain : cfg.tanh_gain;
}

double effective_gamma(const SolverConfig& cfg) {
  if (cfg.noise && cfg.noise->force_zero_momentum) return 0.0;
  return cfg.gamma;
}

// Matrix application for the gradient term. The nonneg_weights emulation
// routes through Q = Q_plus + offset_c J like the intensity-encoded
// hardware; identical values up to rounding.
struct QApplier {
  const QumoProblem* p;
  std::optional<hwsim::NonnegDecomposition> split;

  QApplier(const QumoProblem& prob, bool nonneg) : p(&prob) {
    if (nonneg) split = hwsim::nonneg_decompose(prob.q);
  }

  void apply(const double* y, double* out) const {
    if (!split) {
      p->q.apply(y, out);
      return;
    }
    const std::size_t n = p->n;
    kernels::matvec(split->q_plus.data(), y, out, n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += y[i];
    const double shift = split->offset_c * sum;
    for (std::size_t i = 0; i < n; ++i) out[i] += shift;
  }

  void apply_b8(const double* y, double* out) const {
    if (!split) {
      p->q.apply_b8(y, out);
      return;
    }
    const std::size_t n = p->n;
    kernels::matvec_b8(split->q_plus.data(), y, out, n);
    double sums[B] = {0, 0, 0, 0, 0, 0, 0, 0};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < B; ++c) sums[c] += y[i * B + c];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < B; ++c)
        out[i * B + c] += split->offset_c * sums[c];
  }
};

}  // namespace

void SolverConfig::validate() const {
  if (!(alpha0 > 0.0)) throw InvalidArgument("SolverConfig: alpha0 must be > 0");
  if (!(beta0 >= 0.0)) throw InvalidArgument("SolverConfig: beta0 must be >= 0");
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw InvalidArgument("SolverConfig: gamma must lie in [0, 1)");
  if (!(dt > 0.0)) throw InvalidArgument("SolverConfig: dt must be > 0");
  if (iterations < 1) throw InvalidArgument("SolverConfig: iterations must be >= 1");
  if (samples < 1) throw InvalidArgument("SolverConfig: samples must be >= 1");
  if (nonlinearity == Nonlinearity::Tanh && !(tanh_gain > 0.0))
    throw InvalidArgument("SolverConfig: tanh gain must be > 0");
  if (noise) {
    if (!(noise->sigma >= 0.0)) throw InvalidArgument("NoiseConfig: sigma must be >= 0");
    if (!(noise->transfer_gain > 0.0))
      throw InvalidArgument("NoiseConfig: transfer_gain must be > 0");
  }
}

LambdaEstimate estimate_lambda(const QumoProblem& p) {
  if (p.n == 0) throw InvalidArgument("estimate_lambda: empty problem");
  if (p.q.is_zero()) return {1.0, true};

  const std::size_t n = p.n;
  // Fixed internal key: the estimate is part of the deterministic run.
  constexpr std::uint64_t kKey = 0x9e3779b97f4a7c15ull;
  Vec v(n), w(n);
  rng::Stream init(kKey);
  double norm = 0.0;
  while (norm == 0.0) {
    for (std::size_t i = 0; i < n; ++i) v[i] = init.next_range(-1.0, 1.0);
    norm = std::sqrt(kernels::dot(v.data(), v.data(), n));
  }
  for (std::size_t i = 0; i < n; ++i) v[i] /= norm;

  const std::size_t cap = 10 * n;
  double estimate = 0.0;
  for (std::size_t it = 0; it < cap; ++it) {
    p.q.apply(v.data(), w.data());
    const double wn = std::sqrt(kernels::dot(w.data(), w.data(), n));
    if (wn == 0.0) {
      // Start vector happened to lie in the null space; jitter and retry.
      for (std::size_t i = 0; i < n; ++i) v[i] = init.next_range(-1.0, 1.0);
      const double vn = std::sqrt(kernels::dot(v.data(), v.data(), n));
      for (std::size_t i = 0; i < n; ++i) v[i] /= vn;
      continue;
    }
    const double prev = estimate;
    estimate = wn;  // ||v|| == 1, so ||Qv|| is the Rayleigh-style estimate
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / wn;
    if (it > 0 && std::abs(estimate - prev) <= 1e-6 * estimate)
      return {estimate, true};
  }
  return {estimate, false};
}

double beta_schedule(double beta0, std::size_t t, std::size_t total) {
  if (total < 1) throw InvalidArgument("beta_schedule: T must be >= 1");
  if (t > total) throw InvalidArgument("beta_schedule: t exceeds T");
  return beta0 * (1.0 - static_cast<double>(t) / static_cast<double>(total));
}

Vec initial_state(std::uint64_t seed, std::size_t sample_index, std::size_t n) {
  const std::uint64_t key = rng::sample_key(seed, sample_index);
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto u = rng::uniform2_at(key, kInitDomain, i);
    x[i] = kInitAmplitude * (2.0 * u[0] - 1.0);
  }
  return x;
}

Vec step(const QumoProblem& p, const Vec& x, const Vec& x_prev,
         const SolverConfig& cfg, std::size_t t, double lambda,
         std::uint64_t sample_key) {
  if (p.domain != Domain::PlusMinusOne)
    throw InvalidArgument("step: engine requires the PlusMinusOne domain");
  if (x.size() != p.n || x_prev.size() != p.n)
    throw InvalidArgument("step: state length mismatch");

  const std::size_t n = p.n;
  const double alpha = cfg.alpha0 / lambda;
  const double beta = beta_schedule(cfg.beta0, t, cfg.iterations);
  const double gamma = effective_gamma(cfg);
  const double gain = effective_gain(cfg);
  const double sigma = cfg.noise ? cfg.noise->sigma : 0.0;

  Vec z(n);
  if (cfg.momentum == Momentum::Nesterov && gamma > 0.0) {
    for (std::size_t i = 0; i < n; ++i) z[i] = x[i] + gamma * (x[i] - x_prev[i]);
  } else {
    z = x;
  }

  Vec y(n);
  for (std::size_t i = 0; i < n; ++i)
    y[i] = p.kinds[i] == VarKind::Binary ? nl_binary(z[i], cfg.nonlinearity, gain)
                                         : z[i];

  const QApplier applier(p, cfg.noise && cfg.noise->nonneg_weights);
  Vec g(n);
  applier.apply(y.data(), g.data());
  for (std::size_t i = 0; i < n; ++i) g[i] += p.linear[i];

  Vec out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = x[i] + cfg.dt * (alpha * g[i] - beta * x[i] +
                                gamma * (x[i] - x_prev[i]));
    if (sigma > 0.0)
      v += sigma * rng::gaussian_at(sample_key, kNoiseDomain | t, i);
    out[i] = v < -1.0 ? -1.0 : (v > 1.0 ? 1.0 : v);  // NaN passes through
    if (!std::isfinite(out[i])) throw NumericFailure("step: non-finite state", t);
  }
  return out;
}

namespace {

// State advanced together for a block of 8 samples; all arrays n x 8
// row-major.
struct BlockState {
  Vec x, xp, z, y, g, xn, proj, pg;
  explicit BlockState(std::size_t n)
      : x(n * B), xp(n * B), z(n * B), y(n * B), g(n * B), xn(n * B),
        proj(n * B), pg(n * B) {}
};

struct SampleOutcome {
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_iteration = 0;
  Vec best_assignment;
};

}  // namespace

RunResult run(const QumoProblem& p, const SolverConfig& cfg) {
  cfg.validate();
  if (p.n == 0) throw InvalidArgument("run: empty problem");
  if (p.domain != Domain::PlusMinusOne)
    throw InvalidArgument("run: engine requires the PlusMinusOne domain");

  const std::size_t n = p.n;
  const std::size_t T = cfg.iterations;
  const LambdaEstimate lam = estimate_lambda(p);
  const double alpha = cfg.alpha0 / lam.value;
  const double gamma = effective_gamma(cfg);
  const double gain = effective_gain(cfg);
  const double sigma = cfg.noise ? cfg.noise->sigma : 0.0;
  const bool nesterov = cfg.momentum == Momentum::Nesterov && gamma > 0.0;
  const bool all_binary_sign =
      cfg.nonlinearity == Nonlinearity::Sign && p.all_binary();
  const QApplier applier(p, cfg.noise && cfg.noise->nonneg_weights);

  const std::size_t blocks = (cfg.samples + B - 1) / B;
  std::vector<SampleOutcome> outcomes(cfg.samples);
  std::vector<std::vector<Vec>> trajectories(
      cfg.record_trajectory ? cfg.samples : 0);

  auto run_block = [&](std::size_t blk) {
    BlockState s(n);
    std::uint64_t keys[B];
    const std::size_t s0 = blk * B;
    for (std::size_t c = 0; c < B; ++c) {
      keys[c] = rng::sample_key(cfg.seed, s0 + c);
      const Vec x0 = initial_state(cfg.seed, s0 + c, n);
      for (std::size_t i = 0; i < n; ++i) s.x[i * B + c] = x0[i];
    }
    s.xp = s.x;

    const std::size_t live = std::min(B, cfg.samples - s0);
    auto snapshot = [&](const Vec& block) {
      for (std::size_t c = 0; c < live; ++c) {
        Vec state(n);
        for (std::size_t i = 0; i < n; ++i) state[i] = block[i * B + c];
        trajectories[s0 + c].push_back(std::move(state));
      }
    };
    if (cfg.record_trajectory) snapshot(s.x);

    auto score_block = [&](const Vec& raw, std::size_t iteration) {
      // Projected readout: binary snaps to the nearest endpoint (ties up),
      // continuous clips; the objective is evaluated exactly.
      for (std::size_t i = 0; i < n; ++i) {
        const bool bin = p.kinds[i] == VarKind::Binary;
        for (std::size_t c = 0; c < B; ++c) {
          const double v = raw[i * B + c];
          s.proj[i * B + c] =
              bin ? (v >= 0.0 ? 1.0 : -1.0) : std::min(1.0, std::max(-1.0, v));
        }
      }
      p.q.apply_b8(s.proj.data(), s.pg.data());
      for (std::size_t c = 0; c < live; ++c) {
        double quad = 0.0, lin = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          quad += s.proj[i * B + c] * s.pg[i * B + c];
          lin += p.linear[i] * s.proj[i * B + c];
        }
        const double f = -0.5 * quad - lin + p.offset;
        SampleOutcome& o = outcomes[s0 + c];
        if (f < o.best) {
          o.best = f;
          o.best_iteration = iteration;
          o.best_assignment.resize(n);
          for (std::size_t i = 0; i < n; ++i)
            o.best_assignment[i] = s.proj[i * B + c];
        }
      }
    };

    for (std::size_t t = 0; t < T; ++t) {
      const double beta = beta_schedule(cfg.beta0, t, T);

      const Vec& zsrc = nesterov ? s.z : s.x;
      if (nesterov) {
        for (std::size_t k = 0; k < n * B; ++k)
          s.z[k] = s.x[k] + gamma * (s.x[k] - s.xp[k]);
      }

      if (all_binary_sign) {
        kernels::sign_b8(zsrc.data(), s.y.data(), n);
      } else {
        for (std::size_t i = 0; i < n; ++i) {
          if (p.kinds[i] == VarKind::Binary) {
            for (std::size_t c = 0; c < B; ++c)
              s.y[i * B + c] = nl_binary(zsrc[i * B + c], cfg.nonlinearity, gain);
          } else {
            for (std::size_t c = 0; c < B; ++c) s.y[i * B + c] = zsrc[i * B + c];
          }
        }
      }

      applier.apply_b8(s.y.data(), s.g.data());
      for (std::size_t i = 0; i < n; ++i) {
        const double bi = p.linear[i];
        for (std::size_t c = 0; c < B; ++c) s.g[i * B + c] += bi;
      }

      if (sigma > 0.0) {
        // Noise goes in after the update and before clipping.
        const double huge = std::numeric_limits<double>::max();
        kernels::step_update_b8(s.x.data(), s.xp.data(), s.g.data(), cfg.dt,
                                alpha, beta, gamma, -huge, huge, s.xn.data(), n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t c = 0; c < B; ++c)
            s.xn[i * B + c] +=
                sigma * rng::gaussian_at(keys[c], kNoiseDomain | t, i);
        for (std::size_t k = 0; k < n * B; ++k) {
          const double v = s.xn[k];
          s.xn[k] = v < -1.0 ? -1.0 : (v > 1.0 ? 1.0 : v);
        }
      } else {
        kernels::step_update_b8(s.x.data(), s.xp.data(), s.g.data(), cfg.dt,
                                alpha, beta, gamma, -1.0, 1.0, s.xn.data(), n);
      }

      double probe = 0.0;
      for (std::size_t k = 0; k < n * B; ++k) probe += s.xn[k];
      if (!std::isfinite(probe))
        throw NumericFailure("run: non-finite state", t);

      if (cfg.record_trajectory) snapshot(s.xn);
      if (cfg.track_best || t + 1 == T) score_block(s.xn, t + 1);

      std::swap(s.xp, s.x);
      std::swap(s.x, s.xn);
    }
  };

  parallel_for(blocks, cfg.threads, run_block);

  RunResult r;
  r.lambda_used = lam.value;
  r.lambda_converged = lam.converged;
  r.per_sample_objectives.resize(cfg.samples);
  std::size_t winner = 0;
  for (std::size_t s = 0; s < cfg.samples; ++s) {
    r.per_sample_objectives[s] = outcomes[s].best;
    if (outcomes[s].best < outcomes[winner].best) winner = s;
  }
  r.best_sample = winner;
  r.best_objective = outcomes[winner].best;
  r.best_iteration = outcomes[winner].best_iteration;
  r.best_assignment = outcomes[winner].best_assignment;
  if (cfg.record_trajectory) r.trajectories = std::move(trajectories);
  return r;
}

double lyapunov_energy(const QumoProblem& p, const Vec& x, const Vec& x_prev,
                       const SolverConfig& cfg, std::size_t t) {
  if (x.size() != p.n || x_prev.size() != p.n)
    throw InvalidArgument("lyapunov_energy: state length mismatch");
  const bool has_binary = !std::all_of(p.kinds.begin(), p.kinds.end(), [](VarKind k) {
    return k == VarKind::Continuous;
  });
  if (has_binary && cfg.nonlinearity == Nonlinearity::Sign)
    throw UnsupportedOperation(
        "lyapunov_energy: sign nonlinearity is not invertible");

  const double lambda = estimate_lambda(p).value;
  const double alpha = cfg.alpha0 / lambda;
  const double phi = beta_schedule(cfg.beta0, t, cfg.iterations) / alpha;
  const double mass = cfg.gamma * cfg.dt * cfg.dt / alpha;
  const double gain = effective_gain(cfg);

  Vec y(p.n);
  double kinetic = 0.0;
  double anneal = 0.0;
  for (std::size_t i = 0; i < p.n; ++i) {
    const bool tanh_var =
        p.kinds[i] == VarKind::Binary && cfg.nonlinearity == Nonlinearity::Tanh;
    y[i] = tanh_var ? std::tanh(gain * x[i]) : x[i];
    const double vel = (x[i] - x_prev[i]) / cfg.dt;
    kinetic += 0.5 * mass * vel * vel;
    if (tanh_var) {
      // integral of atanh(u)/gain from 0 to y
      anneal += (y[i] * std::atanh(y[i]) + 0.5 * std::log1p(-y[i] * y[i])) / gain;
    } else {
      anneal += 0.5 * y[i] * y[i];
    }
  }
  return kinetic + model::objective(p, y) + phi * anneal;
}

}  // namespace qumo::engine
