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

#include "qumo/gen.hpp"

#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"
#include "qumo/baselines.hpp"
#include "qumo/error.hpp"
#include "qumo/linalg.hpp"
#include "qumo/model.hpp"
#include "qumo/rng.hpp"
#include "qumo/transforms.hpp"

using namespace qumo;

TEST_CASE("quantizer: integer grids are fixed points") {
  // Entries already on the 7-bit grid (integers up to 63) stay put.
  const auto q = SymWeights::from_dense(2, {63.0, -17.0, -17.0, 5.0});
  const Vec b = {0.0, 42.0};
  const auto [qq, bq] = gen::quantize_weights(q, b, 7);
  CHECK(qq.at(0, 0) == 63.0);
  CHECK(qq.at(0, 1) == -17.0);
  CHECK(qq.at(1, 1) == 5.0);
  CHECK(bq[1] == 42.0);
}

TEST_CASE("quantizer: 1-bit extreme rounds to 0 or the full scale") {
  const auto q = SymWeights::from_dense(2, {0.0, 0.5, 0.5, 1.0});
  const auto [qq, bq] = gen::quantize_weights(q, Vec(2, 0.0), 1);
  (void)bq;
  // levels = 2^0 - 1... 1 bit keeps only {0, +-max}; 0.5 rounds half away
  // from zero, landing on the full scale.
  CHECK(qq.at(1, 1) == 1.0);
  const double v = qq.at(0, 1);
  CHECK((v == 0.0 || std::abs(v) == 1.0));
}

TEST_CASE("quantizer: error bound and exact representability") {
  rng::Stream s(55);
  const std::size_t n = 10;
  std::vector<double> qd(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      qd[i * n + j] = qd[j * n + i] = s.next_gaussian();
  Vec b(n);
  for (auto& v : b) v = s.next_gaussian();
  const auto q = SymWeights::from_dense(n, qd);

  const auto [qq, bq] = gen::quantize_weights(q, b, 7);
  const double lsb = gen::quantize_lsb(q, b, 7);
  REQUIRE(lsb > 0.0);
  double max_err = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      max_err = std::max(max_err, std::abs(qq.at(i, j) - q.at(i, j)));
  for (std::size_t i = 0; i < n; ++i)
    max_err = std::max(max_err, std::abs(bq[i] - b[i]));
  CHECK(max_err <= lsb / 2.0 + 1e-15);

  // Every output weight is an integer multiple of the step.
  const double ulsb = gen::quantize_lsb(qq, bq, 7);
  (void)ulsb;
  qq.for_each_upper([&](std::size_t, std::size_t, double v) {
    const double k = v / lsb;
    CHECK(k == doctest::Approx(std::round(k)).epsilon(1e-9));
  });

  // All-zero input is returned unchanged.
  const auto z = SymWeights::from_dense(1, {0.0});
  const auto [zz, zb] = gen::quantize_weights(z, {0.0}, 7);
  CHECK(zz.at(0, 0) == 0.0);
  CHECK(zb[0] == 0.0);
}

TEST_CASE("three-regular instances have degree exactly 3") {
  gen::GenSpec spec;
  spec.family = gen::Family::ThreeRegular;
  spec.n = 8;
  spec.count = 3;
  spec.candidates = 50;
  spec.sensitivity_trials = 8;
  spec.seed = 6;
  const auto problems = gen::gen_qubo(spec);
  REQUIRE(problems.size() == 3);
  for (const auto& p : problems) {
    std::vector<int> degree(p.n, 0);
    p.q.for_each_upper([&](std::size_t i, std::size_t j, double v) {
      if (i != j && v != 0.0) {
        ++degree[i];
        ++degree[j];
      }
    });
    for (int d : degree) CHECK(d == 3);
  }
}

TEST_CASE("selection prefers sensitive instances and avoids spectral ones") {
  gen::GenSpec spec;
  spec.family = gen::Family::SkDense;
  spec.n = 8;
  spec.count = 5;
  spec.candidates = 200;
  spec.sensitivity_trials = 16;
  spec.seed = 7;
  const auto problems = gen::gen_qubo(spec);
  REQUIRE(problems.size() == 5);

  auto canonical = [](Vec v) {
    for (double x : v) {
      if (x > 0) return v;
      if (x < 0) {
        for (double& e : v) e = -e;
        return v;
      }
    }
    return v;
  };

  for (const auto& p : problems) {
    // Spin minimizer differs from the rounded top eigenvector.
    const auto bf = baselines::brute_force(p);
    const auto top = linalg::top_eigenvector(p.q.to_dense(), p.n);
    Vec pattern(p.n);
    for (std::size_t i = 0; i < p.n; ++i) pattern[i] = top[i] >= 0 ? 1.0 : -1.0;
    CHECK(canonical(bf.assignment) != canonical(pattern));

    // Selected instances flip their minimizer under 1-LSB noise more often
    // than a typical unselected draw; spot-check it is nonzero.
    const double lsb = gen::quantize_lsb(p.q, p.linear, 7);
    rng::Stream s(123);
    std::size_t changed = 0;
    const std::size_t trials = 24;
    for (std::size_t t = 0; t < trials; ++t) {
      std::vector<Triplet> ts;
      p.q.for_each_upper([&](std::size_t i, std::size_t j, double v) {
        const double bump = double(int(s.next_below(3))) - 1.0;
        ts.push_back({i, j, v + bump * lsb});
      });
      const auto noisy = model::make_problem(
          p.n, SymWeights::from_triplets(p.n, ts), Vec(p.n, 0.0), 0.0, p.kinds,
          Domain::PlusMinusOne);
      if (canonical(baselines::brute_force(noisy).assignment) !=
          canonical(bf.assignment))
        ++changed;
    }
    CHECK(changed > 0);
  }
}

TEST_CASE("gen_qubo guards") {
  gen::GenSpec spec;
  spec.family = gen::Family::ThreeRegular;
  spec.n = 7;  // odd: no 3-regular graph exists
  CHECK_THROWS_AS(gen::gen_qubo(spec), InvalidArgument);
  spec.n = 26;
  CHECK_THROWS_AS(gen::gen_qubo(spec), ResourceLimit);
  spec.select = false;
  spec.n = 26;
  spec.count = 1;
  CHECK_NOTHROW(gen::gen_qubo(spec));  // generation without selection is fine
}

TEST_CASE("planted instances: certificate is the grid optimum") {
  gen::GenSpec spec;
  spec.family = gen::Family::PlantedQumo;
  spec.n = 7;
  spec.count = 3;
  spec.seed = 99;
  for (std::size_t nc : {1u, 2u, 3u}) {
    spec.n_continuous = nc;
    const auto batch = gen::gen_planted_qumo(spec);
    REQUIRE(batch.instances.size() == 3);
    for (const auto& inst : batch.instances) {
      CHECK(inst.problem.count_continuous() == nc);
      CHECK(inst.problem.domain == Domain::ZeroOne);
      const double planted_value = model::objective(inst.problem, inst.planted);
      const auto bf = baselines::brute_force(inst.problem, 1.0 / 128.0);
      CHECK(planted_value ==
            doctest::Approx(bf.objective).epsilon(1e-9));

      // Continuous coordinates sit strictly inside the box.
      for (std::size_t i = 0; i < inst.problem.n; ++i) {
        if (inst.problem.kinds[i] == VarKind::Continuous) {
          CHECK(inst.planted[i] >= 1.0 / 128.0);
          CHECK(inst.planted[i] <= 1.0 - 1.0 / 128.0);
        } else {
          CHECK((inst.planted[i] == 0.0 || inst.planted[i] == 1.0));
        }
      }
      // The construction actually obscured the instance.
      CHECK(inst.perturbations_applied > 0);
    }
  }
}

TEST_CASE("planted degenerates to a certified spin problem without continuous vars") {
  gen::GenSpec spec;
  spec.family = gen::Family::PlantedQumo;
  spec.n = 7;
  spec.n_continuous = 0;
  spec.count = 3;
  spec.seed = 12;
  const auto batch = gen::gen_planted_qumo(spec);
  REQUIRE(batch.instances.size() == 3);
  for (const auto& inst : batch.instances) {
    CHECK(inst.problem.all_binary());
    const auto bf = baselines::brute_force(inst.problem);
    CHECK(model::objective(inst.problem, inst.planted) ==
          doctest::Approx(bf.objective).epsilon(1e-9));
    for (double v : inst.planted) CHECK((v == 0.0 || v == 1.0));
  }
}

TEST_CASE("planted instances: weights are 7-bit representable") {
  gen::GenSpec spec;
  spec.family = gen::Family::PlantedQumo;
  spec.n = 6;
  spec.n_continuous = 2;
  spec.count = 2;
  spec.seed = 5;
  const auto batch = gen::gen_planted_qumo(spec);
  REQUIRE_FALSE(batch.instances.empty());
  for (const auto& inst : batch.instances) {
    const double lsb = gen::quantize_lsb(inst.problem.q, inst.problem.linear, 7);
    REQUIRE(lsb > 0.0);
    inst.problem.q.for_each_upper([&](std::size_t, std::size_t, double v) {
      const double k = v / lsb;
      CHECK(k == doctest::Approx(std::round(k)).epsilon(1e-9));
    });
    for (double v : inst.problem.linear) {
      const double k = v / lsb;
      CHECK(k == doctest::Approx(std::round(k)).epsilon(1e-9));
    }
  }
}

TEST_CASE("planted generation is deterministic") {
  gen::GenSpec spec;
  spec.family = gen::Family::PlantedQumo;
  spec.n = 7;
  spec.n_continuous = 2;
  spec.count = 2;
  spec.seed = 31;
  const auto a = gen::gen_planted_qumo(spec);
  const auto b = gen::gen_planted_qumo(spec);
  REQUIRE(a.instances.size() == b.instances.size());
  for (std::size_t k = 0; k < a.instances.size(); ++k) {
    CHECK(a.instances[k].planted == b.instances[k].planted);
    CHECK(a.instances[k].problem.linear == b.instances[k].problem.linear);
  }
}

TEST_CASE("settlement generator: smallest shape maps to 3 binary + 3 slack") {
  gen::GenSpec spec;
  spec.family = gen::Family::SettlementLike;
  spec.parties = 3;
  spec.transactions = 3;
  spec.seed = 13;
  const auto cp = gen::gen_settlement_like(spec);
  CHECK(cp.base.n == 3);
  CHECK(cp.base.all_binary());
  REQUIRE(cp.constraints.size() == 3);

  const auto mapped = transforms::constraints_to_qumo(cp, {});
  CHECK(mapped.problem.n == 6);
  CHECK(mapped.problem.count_binary() == 3);
  CHECK(mapped.problem.count_continuous() == 3);

  // Constraint widths are powers of two so optimal slacks are on the grid.
  for (const auto& e : mapped.map.entries) {
    const double w = e.hi - e.lo;
    REQUIRE(w > 0.0);
    const double l2 = std::log2(w);
    CHECK(l2 == doctest::Approx(std::round(l2)).epsilon(1e-12));
  }
}

TEST_CASE("settlement generator: mapped optimum equals the constrained optimum") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
    gen::GenSpec spec;
    spec.family = gen::Family::SettlementLike;
    spec.parties = 3;
    spec.transactions = 3;
    spec.seed = seed;
    const auto cp = gen::gen_settlement_like(spec);

    // Constrained oracle over binary assignments.
    double copt = 1e300;
    Vec x(cp.base.n);
    for (std::size_t mask = 0; mask < (std::size_t{1} << cp.base.n); ++mask) {
      for (std::size_t i = 0; i < cp.base.n; ++i) x[i] = double((mask >> i) & 1);
      if (!transforms::feasible(cp, x)) continue;
      copt = std::min(copt, model::objective(cp.base, x));
    }
    REQUIRE(copt < 1e300);  // settling nothing is always feasible

    const auto mapped = transforms::constraints_to_qumo(cp, {});
    const auto bf = baselines::brute_force(mapped.problem, 1.0 / 128.0);
    CHECK(bf.objective == doctest::Approx(copt).epsilon(1e-9));
    const Vec orig(bf.assignment.begin(), bf.assignment.begin() + cp.base.n);
    CHECK(transforms::feasible(cp, orig));
  }
}

TEST_CASE("settlement generator: obligation chain with no funds settles nothing") {
  gen::GenSpec spec;
  spec.family = gen::Family::SettlementLike;
  spec.parties = 3;
  spec.transactions = 2;
  spec.chain_topology = true;
  spec.seed = 17;
  const auto cp = gen::gen_settlement_like(spec);
  // The source party has outgoing obligations only, so its zero-width
  // limit derives an equality sense.
  CHECK(cp.constraints[0].is_equality());
  const auto mapped = transforms::constraints_to_qumo(cp, {});
  const auto bf = baselines::brute_force(mapped.problem, 1.0 / 128.0);
  for (std::size_t i = 0; i < cp.base.n; ++i) CHECK(bf.assignment[i] == 0.0);
  CHECK(bf.objective == doctest::Approx(0.0));
}
