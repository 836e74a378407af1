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

#include "qumo/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qumo/error.hpp"
#include "qumo/parallel.hpp"
#include "qumo/rng.hpp"

namespace qumo::baselines {

namespace {

constexpr double kLn08 = 0.22314355131420976;  // -ln(0.8)

// Incrementally maintained state for single-coordinate moves:
// dF = -d * (Qx)_v - 1/2 Q_vv d^2 - b_v d, with g = Qx kept current.
struct IncState {
  const QumoProblem* p = nullptr;
  std::vector<double> qd;
  Vec x;
  Vec g;
  double f = 0.0;

  void reset(const QumoProblem& prob, Vec x0) {
    p = &prob;
    if (qd.empty()) qd = prob.q.to_dense();
    x = std::move(x0);
    g.assign(prob.n, 0.0);
    prob.q.apply(x.data(), g.data());
    f = model::objective(prob, x);
  }

  double delta_for(std::size_t v, double newval) const {
    const double d = newval - x[v];
    return -d * g[v] - 0.5 * qd[v * p->n + v] * d * d - p->linear[v] * d;
  }

  void move(std::size_t v, double newval) {
    const double d = newval - x[v];
    f += delta_for(v, newval);
    x[v] = newval;
    const double* col = qd.data() + v * p->n;  // row v == column v
    for (std::size_t j = 0; j < p->n; ++j) g[j] += d * col[j];
  }

  void check_consistency(std::size_t iteration) const {
    const double full = model::objective(*p, x);
    if (std::abs(f - full) > 1e-9 * std::max(1.0, std::abs(full)))
      throw NumericFailure("incremental energy drifted from full recomputation",
                           iteration);
  }
};

double other_endpoint(double v, double lo, double hi) {
  return v == lo ? hi : lo;
}

// Hot temperature so ~80% of uphill probe moves would be accepted.
double calibrate_t_hot(const IncState& st, rng::Stream& stream, double lo,
                       double hi) {
  const std::size_t n = st.p->n;
  double sum = 0.0;
  std::size_t count = 0;
  for (int probe = 0; probe < 100; ++probe) {
    const std::size_t v = static_cast<std::size_t>(stream.next_below(n));
    const double d = st.delta_for(v, other_endpoint(st.x[v], lo, hi));
    if (d > 0.0) {
      sum += d;
      ++count;
    }
  }
  if (count == 0) return 1.0;
  return (sum / static_cast<double>(count)) / kLn08;
}

}  // namespace

BruteForceResult brute_force(const QumoProblem& p, double grid_resolution) {
  if (p.n == 0) return {{}, p.offset};
  if (!(grid_resolution > 0.0 && grid_resolution <= 1.0))
    throw InvalidArgument("brute_force: grid resolution must lie in (0, 1]");

  std::vector<std::size_t> bins, conts;
  for (std::size_t i = 0; i < p.n; ++i)
    (p.kinds[i] == VarKind::Binary ? bins : conts).push_back(i);
  const std::size_t nb = bins.size();
  const std::size_t nc = conts.size();
  if (nb > 24) throw ResourceLimit("brute_force: more than 24 binary variables");
  if (nc > 4) throw ResourceLimit("brute_force: more than 4 continuous variables");

  const std::size_t steps =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(1.0 / grid_resolution)));
  double combos = std::pow(2.0, static_cast<double>(nb));
  for (std::size_t c = 0; c < nc; ++c) combos *= static_cast<double>(steps + 1);
  if (combos > 1e9) throw ResourceLimit("brute_force: grid too large");

  const double lo = p.box_lo();
  const double hi = p.box_hi();
  const double span = hi - lo;

  IncState st;
  st.reset(p, Vec(p.n, lo));

  double best = std::numeric_limits<double>::infinity();
  Vec best_x;
  std::vector<std::size_t> ks(nc, 0);

  auto scan_continuous = [&]() {
    // Odometer over the grid, last continuous variable fastest.
    for (;;) {
      if (st.f < best) {
        best = st.f;
        best_x = st.x;
      }
      if (nc == 0) return;
      std::size_t pos = nc;
      while (pos > 0) {
        --pos;
        if (++ks[pos] <= steps) {
          st.move(conts[pos],
                  lo + span * static_cast<double>(ks[pos]) / static_cast<double>(steps));
          break;
        }
        ks[pos] = 0;
        st.move(conts[pos], lo);
        if (pos == 0) return;
      }
    }
  };

  const std::size_t patterns = std::size_t{1} << nb;
  for (std::size_t m = 0; m < patterns; ++m) {
    if (m > 0) {
      // Apply exactly the bits that changed; bins[0] is the slowest digit.
      const std::size_t changed = m ^ (m - 1);
      for (std::size_t j = 0; (changed >> j) != 0; ++j) {
        const std::size_t var = bins[nb - 1 - j];
        st.move(var, (m >> j) & 1 ? hi : lo);
      }
      std::fill(ks.begin(), ks.end(), 0);
      for (std::size_t c = 0; c < nc; ++c)
        if (st.x[conts[c]] != lo) st.move(conts[c], lo);
    }
    scan_continuous();
  }

  // Incremental values drift a little over long scans; report the exact
  // objective of the winning assignment.
  return {best_x, model::objective(p, best_x)};
}

engine::RunResult simulated_annealing(const QumoProblem& p, const SaConfig& cfg) {
  if (p.n == 0) throw InvalidArgument("simulated_annealing: empty problem");
  if (!p.all_binary())
    throw InvalidArgument(
        "simulated_annealing: continuous variables must be encoded first");
  if (cfg.restarts < 1) throw InvalidArgument("simulated_annealing: restarts must be >= 1");

  const double lo = p.box_lo();
  const double hi = p.box_hi();
  const std::size_t n = p.n;

  struct Outcome {
    double best;
    Vec best_x;
    std::size_t best_sweep;
  };
  std::vector<Outcome> outcomes(cfg.restarts);

  parallel_for(cfg.restarts, cfg.threads, [&](std::size_t r) {
    rng::Stream stream(rng::sample_key(cfg.seed, r));
    Vec x0(n);
    for (std::size_t i = 0; i < n; ++i) x0[i] = (stream.next_u64() & 1) ? hi : lo;
    IncState st;
    st.reset(p, std::move(x0));

    double t_hot = cfg.t_hot > 0.0 ? cfg.t_hot : calibrate_t_hot(st, stream, lo, hi);
    double t_cold = cfg.t_cold > 0.0 ? cfg.t_cold : t_hot / 1000.0;

    Outcome o{st.f, st.x, 0};
    std::size_t attempts = 0;
    for (std::size_t k = 0; k < cfg.sweeps; ++k) {
      const double frac = cfg.sweeps > 1
                              ? static_cast<double>(k) / static_cast<double>(cfg.sweeps - 1)
                              : 0.0;
      const double temp = t_hot * std::pow(t_cold / t_hot, frac);
      for (std::size_t a = 0; a < n; ++a) {
        const std::size_t v = static_cast<std::size_t>(stream.next_below(n));
        const double cand = other_endpoint(st.x[v], lo, hi);
        const double d = st.delta_for(v, cand);
        if (d <= 0.0 || stream.next_unit() < std::exp(-d / temp)) {
          st.move(v, cand);
          if (st.f < o.best) {
            o.best = st.f;
            o.best_x = st.x;
            o.best_sweep = k + 1;
          }
        }
        if (cfg.paranoid_check && ++attempts % 1000 == 0) st.check_consistency(k);
      }
    }
    outcomes[r] = std::move(o);
  });

  engine::RunResult res;
  res.per_sample_objectives.resize(cfg.restarts);
  std::size_t win = 0;
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    res.per_sample_objectives[r] = outcomes[r].best;
    if (outcomes[r].best < outcomes[win].best) win = r;
  }
  res.best_sample = win;
  res.best_objective = outcomes[win].best;
  res.best_assignment = outcomes[win].best_x;
  res.best_iteration = outcomes[win].best_sweep;
  return res;
}

engine::RunResult parallel_tempering(const QumoProblem& p, const PtConfig& cfg) {
  if (p.n == 0) throw InvalidArgument("parallel_tempering: empty problem");
  if (!p.all_binary())
    throw InvalidArgument(
        "parallel_tempering: continuous variables must be encoded first");
  if (cfg.replicas < 1) throw InvalidArgument("parallel_tempering: need >= 1 replica");

  const double lo = p.box_lo();
  const double hi = p.box_hi();
  const std::size_t n = p.n;
  const std::size_t R = cfg.replicas;

  struct Outcome {
    double best;
    Vec best_x;
    std::size_t best_sweep;
  };
  std::vector<Outcome> outcomes(cfg.restarts);

  parallel_for(cfg.restarts, cfg.threads, [&](std::size_t rs) {
    const std::uint64_t key = rng::sample_key(cfg.seed, rs);
    std::vector<rng::Stream> streams;
    streams.reserve(R);
    for (std::size_t r = 0; r < R; ++r) streams.emplace_back(key, r + 1);
    rng::Stream swap_stream(key, 0);

    std::vector<IncState> replicas(R);
    for (std::size_t r = 0; r < R; ++r) {
      Vec x0(n);
      for (std::size_t i = 0; i < n; ++i)
        x0[i] = (streams[r].next_u64() & 1) ? hi : lo;
      replicas[r].reset(p, std::move(x0));
    }

    double t_hot =
        cfg.t_hot > 0.0 ? cfg.t_hot : calibrate_t_hot(replicas[0], swap_stream, lo, hi);
    double t_cold = cfg.t_cold > 0.0 ? cfg.t_cold : t_hot / 1000.0;
    std::vector<double> temps(R);
    for (std::size_t r = 0; r < R; ++r) {
      const double frac = R > 1 ? static_cast<double>(r) / static_cast<double>(R - 1) : 0.0;
      temps[r] = t_cold * std::pow(t_hot / t_cold, frac);  // replica 0 coldest
    }

    Outcome o{replicas[0].f, replicas[0].x, 0};
    for (std::size_t r = 0; r < R; ++r)
      if (replicas[r].f < o.best) {
        o.best = replicas[r].f;
        o.best_x = replicas[r].x;
      }

    std::size_t attempts = 0;
    for (std::size_t k = 0; k < cfg.sweeps; ++k) {
      for (std::size_t r = 0; r < R; ++r) {
        IncState& st = replicas[r];
        for (std::size_t a = 0; a < n; ++a) {
          const std::size_t v = static_cast<std::size_t>(streams[r].next_below(n));
          const double cand = other_endpoint(st.x[v], lo, hi);
          const double d = st.delta_for(v, cand);
          if (d <= 0.0 || streams[r].next_unit() < std::exp(-d / temps[r])) {
            st.move(v, cand);
            if (st.f < o.best) {
              o.best = st.f;
              o.best_x = st.x;
              o.best_sweep = k + 1;
            }
          }
          if (cfg.paranoid_check && ++attempts % 1000 == 0) st.check_consistency(k);
        }
      }
      // Alternating-parity neighbor swaps; equal energies always exchange.
      for (std::size_t r = k % 2; r + 1 < R; r += 2) {
        const double dbeta = 1.0 / temps[r] - 1.0 / temps[r + 1];
        const double de = replicas[r].f - replicas[r + 1].f;
        const double acc = std::min(1.0, std::exp(dbeta * de));
        if (swap_stream.next_unit() < acc) {
          std::swap(replicas[r].x, replicas[r + 1].x);
          std::swap(replicas[r].g, replicas[r + 1].g);
          std::swap(replicas[r].f, replicas[r + 1].f);
        }
      }
    }
    outcomes[rs] = std::move(o);
  });

  engine::RunResult res;
  res.per_sample_objectives.resize(cfg.restarts);
  std::size_t win = 0;
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    res.per_sample_objectives[r] = outcomes[r].best;
    if (outcomes[r].best < outcomes[win].best) win = r;
  }
  res.best_sample = win;
  res.best_objective = outcomes[win].best;
  res.best_assignment = outcomes[win].best_x;
  res.best_iteration = outcomes[win].best_sweep;
  return res;
}

engine::RunResult hopfield_run(const QumoProblem& p, const HopfieldConfig& cfg) {
  if (p.n == 0) throw InvalidArgument("hopfield_run: empty problem");
  if (p.domain != Domain::PlusMinusOne)
    throw InvalidArgument("hopfield_run: requires the PlusMinusOne domain");
  if (cfg.samples < 1) throw InvalidArgument("hopfield_run: samples must be >= 1");

  const std::size_t n = p.n;
  const engine::LambdaEstimate lam = engine::estimate_lambda(p);
  const double alpha = cfg.alpha0 / lam.value;

  struct Outcome {
    double best = std::numeric_limits<double>::infinity();
    Vec best_x;
    std::size_t best_iter = 0;
  };
  std::vector<Outcome> outcomes(cfg.samples);

  parallel_for(cfg.samples, cfg.threads, [&](std::size_t s) {
    Vec x = engine::initial_state(cfg.seed, s, n);
    Vec y(n), g(n);
    Outcome o;
    for (std::size_t t = 0; t < cfg.iterations; ++t) {
      for (std::size_t i = 0; i < n; ++i)
        y[i] = p.kinds[i] == VarKind::Binary ? std::tanh(cfg.tanh_gain * x[i]) : x[i];
      p.q.apply(y.data(), g.data());
      for (std::size_t i = 0; i < n; ++i) {
        const double v =
            x[i] + cfg.dt * (alpha * (g[i] + p.linear[i]) - cfg.beta * x[i]);
        x[i] = v < -1.0 ? -1.0 : (v > 1.0 ? 1.0 : v);
        if (!std::isfinite(x[i]))
          throw NumericFailure("hopfield_run: non-finite state", t);
      }
      const Vec proj = model::project(p, x);
      const double f = model::objective(p, proj);
      if (f < o.best) {
        o.best = f;
        o.best_x = proj;
        o.best_iter = t + 1;
      }
    }
    outcomes[s] = std::move(o);
  });

  engine::RunResult res;
  res.lambda_used = lam.value;
  res.lambda_converged = lam.converged;
  res.per_sample_objectives.resize(cfg.samples);
  std::size_t win = 0;
  for (std::size_t s = 0; s < cfg.samples; ++s) {
    res.per_sample_objectives[s] = outcomes[s].best;
    if (outcomes[s].best < outcomes[win].best) win = s;
  }
  res.best_sample = win;
  res.best_objective = outcomes[win].best;
  res.best_assignment = outcomes[win].best_x;
  res.best_iteration = outcomes[win].best_iter;
  return res;
}

engine::RunResult simulated_bifurcation_run(const QumoProblem& p,
                                            const SbConfig& cfg) {
  if (p.n == 0) throw InvalidArgument("simulated_bifurcation_run: empty problem");
  if (!p.all_binary())
    throw InvalidArgument("simulated_bifurcation_run: all-binary problems only");
  if (p.domain != Domain::PlusMinusOne)
    throw InvalidArgument("simulated_bifurcation_run: requires PlusMinusOne domain");
  if (cfg.samples < 1 || cfg.iterations < 1)
    throw InvalidArgument("simulated_bifurcation_run: bad budgets");

  const std::size_t n = p.n;

  double c0 = cfg.c0;
  if (c0 == 0.0) {
    // Scale the coupling so the pump bifurcates around unit amplitudes.
    double sq = 0.0;
    std::size_t cnt = 0;
    p.q.for_each_upper([&](std::size_t i, std::size_t j, double v) {
      if (i != j) {
        sq += 2.0 * v * v;
        cnt += 2;
      }
    });
    const double rms = cnt > 0 ? std::sqrt(sq / static_cast<double>(cnt)) : 0.0;
    c0 = rms > 0.0 ? 0.5 / (rms * std::sqrt(static_cast<double>(n))) : 1.0;
  }

  struct Outcome {
    double best = std::numeric_limits<double>::infinity();
    Vec best_x;
    std::size_t best_iter = 0;
  };
  std::vector<Outcome> outcomes(cfg.samples);

  parallel_for(cfg.samples, cfg.threads, [&](std::size_t s) {
    Vec x = engine::initial_state(cfg.seed, s, n);
    Vec vel(n, 0.0), sx(n), g(n);
    Outcome o;
    const std::size_t T = cfg.iterations;
    for (std::size_t t = 0; t < T; ++t) {
      const double pump =
          T > 1 ? cfg.a0 * static_cast<double>(t) / static_cast<double>(T - 1) : cfg.a0;
      for (std::size_t i = 0; i < n; ++i)
        sx[i] = x[i] > 0.0 ? 1.0 : (x[i] < 0.0 ? -1.0 : 0.0);
      p.q.apply(sx.data(), g.data());
      double probe = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        vel[i] += cfg.dt * (c0 * (g[i] + p.linear[i]) - (cfg.a0 - pump) * x[i]);
        x[i] += cfg.dt * cfg.a0 * vel[i];
        // Inelastic walls: position clamps, velocity dies.
        if (x[i] >= 1.0) {
          x[i] = 1.0;
          vel[i] = 0.0;
        } else if (x[i] <= -1.0) {
          x[i] = -1.0;
          vel[i] = 0.0;
        }
        probe += x[i];
      }
      if (!std::isfinite(probe))
        throw NumericFailure("simulated_bifurcation_run: non-finite state", t);

      const Vec proj = model::project(p, x);
      const double f = model::objective(p, proj);
      if (f < o.best) {
        o.best = f;
        o.best_x = proj;
        o.best_iter = t + 1;
      }
    }
    outcomes[s] = std::move(o);
  });

  engine::RunResult res;
  res.per_sample_objectives.resize(cfg.samples);
  std::size_t win = 0;
  for (std::size_t s = 0; s < cfg.samples; ++s) {
    res.per_sample_objectives[s] = outcomes[s].best;
    if (outcomes[s].best < outcomes[win].best) win = s;
  }
  res.best_sample = win;
  res.best_objective = outcomes[win].best;
  res.best_assignment = outcomes[win].best_x;
  res.best_iteration = outcomes[win].best_iter;
  return res;
}

}  // namespace qumo::baselines
