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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "qumo/engine.hpp"
#include "qumo/error.hpp"
#include "qumo/gen.hpp"
#include "qumo/metrics.hpp"
#include "qumo/model.hpp"
#include "qumo/rng.hpp"

using namespace qumo;

namespace {

QumoProblem random_spin_problem(std::size_t n, rng::Stream& s, bool with_field = false) {
  std::vector<double> q(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      q[i * n + j] = q[j * n + i] = s.next_gaussian();
  Vec b(n, 0.0);
  if (with_field)
    for (auto& v : b) v = 0.3 * s.next_gaussian();
  return model::make_dense_problem(n, std::move(q), std::move(b), 0.0,
                                   std::vector<VarKind>(n, VarKind::Binary),
                                   Domain::PlusMinusOne);
}

// Plain full-enumeration oracle, deliberately separate from brute_force's
// incremental path.
double enumerate_min(const QumoProblem& p) {
  double best = 1e300;
  Vec x(p.n);
  const double lo = p.box_lo(), hi = p.box_hi();
  for (std::size_t mask = 0; mask < (std::size_t{1} << p.n); ++mask) {
    for (std::size_t i = 0; i < p.n; ++i) x[i] = (mask >> i) & 1 ? hi : lo;
    best = std::min(best, model::objective(p, x));
  }
  return best;
}

}  // namespace

TEST_CASE("brute force: separable all-binary problem") {
  const std::size_t n = 5;
  const auto p = model::make_dense_problem(
      n, std::vector<double>(n * n, 0.0), Vec(n, 1.0), 0.5,
      std::vector<VarKind>(n, VarKind::Binary), Domain::ZeroOne);
  const auto r = baselines::brute_force(p);
  CHECK(r.objective == doctest::Approx(-double(n) + 0.5));
  for (double v : r.assignment) CHECK(v == 1.0);
}

TEST_CASE("brute force matches plain enumeration on random problems") {
  rng::Stream s(404);
  for (int rep = 0; rep < 8; ++rep) {
    const auto p = random_spin_problem(9, s, true);
    const auto r = baselines::brute_force(p);
    CHECK(r.objective == doctest::Approx(enumerate_min(p)).epsilon(1e-10));
    CHECK(model::objective(p, r.assignment) == doctest::Approx(r.objective));
  }
}

TEST_CASE("brute force scans the continuous grid") {
  // F = 1/2 s^2 - 0.7505 s is minimized near s = 0.7505; on the 1/128 grid
  // the winner is 96/128 = 0.75.
  const auto p = model::make_dense_problem(1, {-1.0}, {0.7505}, 0.0,
                                           {VarKind::Continuous}, Domain::ZeroOne);
  const auto r = baselines::brute_force(p, 1.0 / 128.0);
  CHECK(r.assignment[0] == doctest::Approx(0.75));

  // Mixed: the binary part couples to the continuous one.
  const auto p2 = model::make_dense_problem(
      2, {0.0, 1.0, 1.0, -2.0}, {0.0, 0.0}, 0.0,
      {VarKind::Binary, VarKind::Continuous}, Domain::ZeroOne);
  const auto r2 = baselines::brute_force(p2, 1.0 / 128.0);
  // F(x, s) = s^2 - x s: best at x = 1, s = 1/2, value -1/4.
  CHECK(r2.objective == doctest::Approx(-0.25));
  CHECK(r2.assignment[0] == 1.0);
  CHECK(r2.assignment[1] == doctest::Approx(0.5));
}

TEST_CASE("brute force resource guards") {
  const std::size_t n = 25;
  const auto p = model::make_dense_problem(
      n, std::vector<double>(n * n, 0.0), Vec(n, 0.0), 0.0,
      std::vector<VarKind>(n, VarKind::Binary), Domain::ZeroOne);
  CHECK_THROWS_AS(baselines::brute_force(p), ResourceLimit);

  const auto c = model::make_dense_problem(
      5, std::vector<double>(25, 0.0), Vec(5, 0.0), 0.0,
      std::vector<VarKind>(5, VarKind::Continuous), Domain::ZeroOne);
  CHECK_THROWS_AS(baselines::brute_force(c), ResourceLimit);
}

TEST_CASE("simulated annealing: budget zero returns the initial draw") {
  rng::Stream s(1);
  const auto p = random_spin_problem(8, s);
  baselines::SaConfig cfg;
  cfg.sweeps = 0;
  cfg.seed = 5;
  const auto r = baselines::simulated_annealing(p, cfg);
  CHECK(model::objective(p, r.best_assignment) == doctest::Approx(r.best_objective));
}

TEST_CASE("simulated annealing finds 12-variable optima almost always") {
  rng::Stream s(2);
  std::size_t hits = 0;
  const auto p = random_spin_problem(12, s);
  const double opt = baselines::brute_force(p).objective;
  for (int run = 0; run < 100; ++run) {
    baselines::SaConfig cfg;
    cfg.sweeps = 300;
    cfg.seed = run;
    const auto r = baselines::simulated_annealing(p, cfg);
    if (std::abs(r.best_objective - opt) < 1e-9) ++hits;
  }
  CHECK(hits >= 95);
}

TEST_CASE("simulated annealing at zero temperature is greedy descent") {
  rng::Stream s(3);
  const auto p = random_spin_problem(10, s);
  baselines::SaConfig cfg;
  cfg.sweeps = 50;
  cfg.t_hot = 1e-12;
  cfg.t_cold = 1e-13;
  cfg.seed = 17;
  const auto r = baselines::simulated_annealing(p, cfg);
  // The endpoint of a greedy descent admits no improving flip.
  Vec x = r.best_assignment;
  for (std::size_t v = 0; v < p.n; ++v) {
    Vec flipped = x;
    flipped[v] = -flipped[v];
    CHECK(model::objective(p, flipped) >= r.best_objective - 1e-9);
  }
}

TEST_CASE("simulated annealing bookkeeping survives the paranoid check") {
  rng::Stream s(4);
  const auto p = random_spin_problem(10, s, true);
  baselines::SaConfig cfg;
  cfg.sweeps = 500;
  cfg.seed = 23;
  cfg.paranoid_check = true;
  CHECK_NOTHROW(baselines::simulated_annealing(p, cfg));
}

TEST_CASE("simulated annealing rejects mixed problems") {
  const auto p = model::make_dense_problem(1, {0.0}, {1.0}, 0.0,
                                           {VarKind::Continuous}, Domain::ZeroOne);
  CHECK_THROWS_AS(baselines::simulated_annealing(p, {}), InvalidArgument);
}

TEST_CASE("parallel tempering: one replica behaves like fixed-T metropolis") {
  rng::Stream s(5);
  const auto p = random_spin_problem(8, s);
  baselines::PtConfig cfg;
  cfg.replicas = 1;
  cfg.sweeps = 200;
  cfg.seed = 2;
  const auto r = baselines::parallel_tempering(p, cfg);
  CHECK(std::isfinite(r.best_objective));
  CHECK(model::objective(p, r.best_assignment) == doctest::Approx(r.best_objective));
}

TEST_CASE("parallel tempering finds 12-variable optima") {
  rng::Stream s(6);
  const auto p = random_spin_problem(12, s);
  const double opt = baselines::brute_force(p).objective;
  baselines::PtConfig cfg;
  cfg.sweeps = 400;
  cfg.replicas = 8;
  cfg.seed = 3;
  const auto r = baselines::parallel_tempering(p, cfg);
  CHECK(r.best_objective == doctest::Approx(opt).epsilon(1e-9));
}

TEST_CASE("parallel tempering is at least as good as annealing on spin glasses") {
  rng::Stream s(7);
  std::size_t pt_no_worse = 0;
  const int pairs = 20;
  for (int inst = 0; inst < pairs; ++inst) {
    const auto p = random_spin_problem(16, s);
    baselines::SaConfig sa;
    sa.sweeps = 240;  // equal sweep budget: 8 replicas x 30 sweeps
    sa.seed = 1000 + inst;
    baselines::PtConfig pt;
    pt.replicas = 8;
    pt.sweeps = 30;
    pt.seed = 1000 + inst;
    const double a = baselines::simulated_annealing(p, sa).best_objective;
    const double b = baselines::parallel_tempering(p, pt).best_objective;
    if (b <= a + 1e-9) ++pt_no_worse;
  }
  CHECK(pt_no_worse >= pairs / 2);
}

TEST_CASE("hopfield reduces to the engine with frozen-zero dissipation") {
  rng::Stream s(8);
  const auto p = random_spin_problem(7, s, true);
  baselines::HopfieldConfig hc;
  hc.alpha0 = 1.0;
  hc.beta = 0.0;
  hc.dt = 0.7;
  hc.iterations = 40;
  hc.samples = 3;
  hc.seed = 99;

  engine::SolverConfig ec;
  ec.alpha0 = 1.0;
  ec.beta0 = 0.0;  // frozen schedule: beta(t) == 0 == the hopfield constant
  ec.gamma = 0.0;
  ec.dt = 0.7;
  ec.nonlinearity = engine::Nonlinearity::Tanh;
  ec.tanh_gain = 1.0;
  ec.iterations = 40;
  ec.samples = 3;
  ec.seed = 99;

  const auto h = baselines::hopfield_run(p, hc);
  const auto e = engine::run(p, ec);
  REQUIRE(h.per_sample_objectives.size() == e.per_sample_objectives.size());
  for (std::size_t i = 0; i < h.per_sample_objectives.size(); ++i)
    CHECK(h.per_sample_objectives[i] ==
          doctest::Approx(e.per_sample_objectives[i]).epsilon(1e-12));
}

TEST_CASE("hopfield solves the separable problem") {
  const std::size_t n = 5;
  const auto p = model::make_dense_problem(
      n, std::vector<double>(n * n, 0.0), Vec(n, 1.0), 0.0,
      std::vector<VarKind>(n, VarKind::Binary), Domain::PlusMinusOne);
  baselines::HopfieldConfig hc;
  hc.beta = 0.05;
  hc.iterations = 300;
  hc.samples = 4;
  const auto r = baselines::hopfield_run(p, hc);
  CHECK(r.best_objective == doctest::Approx(-double(n)));
}

TEST_CASE("first-order dynamics trail the tuned second-order solver") {
  // Paired experiment at an equal iteration budget on a 12-variable spin
  // glass: the annealed momentum solver's success rate is at least the
  // constant-dissipation first-order one's.
  gen::GenSpec spec;
  spec.family = gen::Family::SkDense;
  spec.n = 12;
  spec.count = 1;
  spec.seed = 47;
  spec.select = false;
  const auto p = gen::gen_qubo(spec)[0];
  const double opt = baselines::brute_force(p).objective;
  const auto tol = metrics::default_tolerance(opt);

  // Tuned: scan a small (alpha0, beta0) grid and keep the best sampling rate.
  double aim_rate = 0.0;
  for (double a0 : {0.3, 1.0, 3.0})
    for (double b0 : {0.1, 0.5, 1.0, 3.0}) {
      engine::SolverConfig ac;
      ac.iterations = 400;
      ac.samples = 200;
      ac.alpha0 = a0;
      ac.beta0 = b0;
      ac.seed = 21;
      aim_rate = std::max(
          aim_rate,
          metrics::success_rate(engine::run(p, ac).per_sample_objectives, opt, tol));
    }

  baselines::HopfieldConfig hc;
  hc.iterations = 400;
  hc.samples = 200;
  hc.alpha0 = 1.0;
  hc.beta = 0.5;
  hc.seed = 21;
  const double hop_rate = metrics::success_rate(
      baselines::hopfield_run(p, hc).per_sample_objectives, opt, tol);

  CHECK(hop_rate <= aim_rate);
}

TEST_CASE("bifurcation dynamics: no coupling keeps initial signs") {
  rng::Stream s(9);
  const std::size_t n = 6;
  const auto p = model::make_dense_problem(
      n, std::vector<double>(n * n, 0.0), Vec(n, 0.0), 0.0,
      std::vector<VarKind>(n, VarKind::Binary), Domain::PlusMinusOne);
  baselines::SbConfig cfg;
  // Q and b are zero, so the coupling force vanishes for any c0.
  cfg.a0 = 0.2;
  cfg.dt = 0.5;
  cfg.iterations = 20;  // total phase stays below pi/2: no sign flips
  cfg.samples = 5;
  cfg.seed = 12;
  const auto r = baselines::simulated_bifurcation_run(p, cfg);
  // With zero coupling every objective is 0 and the readout keeps signs.
  CHECK(r.best_objective == 0.0);
  const Vec x0 = engine::initial_state(cfg.seed, r.best_sample, n);
  for (std::size_t i = 0; i < n; ++i)
    CHECK(r.best_assignment[i] == (x0[i] >= 0.0 ? 1.0 : -1.0));
}

TEST_CASE("bifurcation walls zero the velocity") {
  // Strong drive against the wall: position clamps at 1, velocity must die.
  const auto p = model::make_dense_problem(1, {0.0}, {100.0}, 0.0,
                                           {VarKind::Binary}, Domain::PlusMinusOne);
  baselines::SbConfig cfg;
  cfg.c0 = 1.0;
  cfg.iterations = 50;
  cfg.samples = 1;
  const auto r = baselines::simulated_bifurcation_run(p, cfg);
  CHECK(r.best_assignment[0] == 1.0);
  CHECK(r.best_objective == doctest::Approx(-100.0));
}

TEST_CASE("bifurcation run reaches 12-variable optima with a tuned coupling") {
  gen::GenSpec spec;
  spec.family = gen::Family::SkDense;
  spec.n = 12;
  spec.count = 1;
  spec.seed = 31;
  spec.select = false;
  const auto p = gen::gen_qubo(spec)[0];
  const double opt = baselines::brute_force(p).objective;

  baselines::SbConfig cfg;
  cfg.iterations = 400;
  cfg.samples = 1000;
  cfg.seed = 9;
  const auto r = baselines::simulated_bifurcation_run(p, cfg);
  CHECK(r.best_objective == doctest::Approx(opt).epsilon(1e-9));
}

TEST_CASE("baselines are deterministic under a fixed seed") {
  rng::Stream s(10);
  const auto p = random_spin_problem(10, s);
  baselines::SaConfig sa;
  sa.sweeps = 100;
  sa.restarts = 4;
  sa.seed = 77;
  const auto a = baselines::simulated_annealing(p, sa);
  sa.threads = 3;
  const auto b = baselines::simulated_annealing(p, sa);
  CHECK(a.per_sample_objectives == b.per_sample_objectives);
  CHECK(a.best_assignment == b.best_assignment);

  baselines::PtConfig pt;
  pt.sweeps = 60;
  pt.restarts = 3;
  pt.seed = 78;
  const auto c = baselines::parallel_tempering(p, pt);
  const auto d = baselines::parallel_tempering(p, pt);
  CHECK(c.per_sample_objectives == d.per_sample_objectives);
}
