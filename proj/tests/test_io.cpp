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

#include "qumo/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "doctest.h"
#include "qumo/bench.hpp"
#include "qumo/engine.hpp"
#include "qumo/error.hpp"
#include "qumo/gen.hpp"
#include "qumo/model.hpp"
#include "qumo/rng.hpp"

using namespace qumo;

namespace {

QumoProblem random_mixed(std::size_t n, std::size_t nc, rng::Stream& s) {
  std::vector<double> q(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (s.next_unit() < 0.6)
        q[i * n + j] = q[j * n + i] = s.next_gaussian();
  Vec b(n);
  for (auto& v : b) v = s.next_unit() < 0.5 ? 0.0 : s.next_gaussian();
  std::vector<VarKind> kinds(n, VarKind::Binary);
  for (std::size_t i = 0; i < nc; ++i) kinds[i] = VarKind::Continuous;
  return model::make_dense_problem(n, std::move(q), std::move(b),
                                   s.next_gaussian(), std::move(kinds),
                                   Domain::ZeroOne);
}

}  // namespace

TEST_CASE("format_exact round trips doubles") {
  rng::Stream s(1);
  for (int i = 0; i < 1000; ++i) {
    const double v = std::ldexp(s.next_gaussian(), int(s.next_below(40)) - 20);
    const std::string text = io::format_exact(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
  }
}

TEST_CASE("native round trip is bit-exact") {
  rng::Stream s(2);
  for (int rep = 0; rep < 10; ++rep) {
    const auto p = random_mixed(6 + rep, rep % 3, s);
    std::ostringstream out;
    io::write_native(out, p);
    std::istringstream in(out.str());
    const auto parsed = io::parse_native(in);
    const auto& q = parsed.base;
    REQUIRE(q.n == p.n);
    CHECK(q.domain == p.domain);
    CHECK(q.kinds == p.kinds);
    CHECK(q.offset == p.offset);
    CHECK(q.linear == p.linear);
    for (std::size_t i = 0; i < p.n; ++i)
      for (std::size_t j = 0; j < p.n; ++j) CHECK(q.q.at(i, j) == p.q.at(i, j));
    CHECK_FALSE(parsed.constrained());
  }
}

TEST_CASE("native round trip keeps constraints intact") {
  gen::GenSpec spec;
  spec.family = gen::Family::SettlementLike;
  spec.seed = 8;
  const auto cp = gen::gen_settlement_like(spec);
  std::ostringstream out;
  io::write_native(out, cp.base, cp.constraints);
  std::istringstream in(out.str());
  const auto parsed = io::parse_native(in);
  REQUIRE(parsed.constrained());
  REQUIRE(parsed.constraints.size() == cp.constraints.size());
  for (std::size_t k = 0; k < cp.constraints.size(); ++k) {
    CHECK(parsed.constraints[k].lo == cp.constraints[k].lo);
    CHECK(parsed.constraints[k].hi == cp.constraints[k].hi);
    CHECK(parsed.constraints[k].coeffs == cp.constraints[k].coeffs);
  }
}

TEST_CASE("native parser rejects malformed input") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return io::parse_native(in);
  };
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("nope 1\n"), ParseError);
  CHECK_THROWS_AS(parse("qumo 2\n[meta]\nn 1\n"), ParseError);      // version
  CHECK_THROWS_AS(parse("qumo 1\n[meta]\nn 0\n"), ParseError);      // empty
  CHECK_THROWS_AS(parse("qumo 1\n[meta]\nn 2\n[Q]\n0 5 1.0\n"), ParseError);
  CHECK_THROWS_AS(parse("qumo 1\n[meta]\nn 2\n[Q]\n0 1 zzz\n"), ParseError);
  CHECK_THROWS_AS(parse("qumo 1\n[meta]\nn 2\nkinds b\n"), ParseError);
  CHECK_THROWS_AS(parse("qumo 1\n[wat]\n"), ParseError);
  // Line numbers point at the offender.
  try {
    parse("qumo 1\n[meta]\nn 2\n[Q]\n0 1 bad\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
  }
}

TEST_CASE("gset parsing: minimal file and duplicate edges") {
  {
    std::istringstream in("2 1\n1 2 1\n");
    const auto g = io::parse_gset(in);
    CHECK(g.vertices == 2);
    CHECK(g.edge_count == 1);
    // Optimal cut of a single unit edge is 1: -F at the cut assignment.
    CHECK(-model::objective(g.problem, {1.0, -1.0}) == doctest::Approx(1.0));
  }
  {
    std::istringstream in("2 2\n1 2 1\n1 2 1\n");
    const auto g = io::parse_gset(in);
    CHECK(g.edge_count == 1);  // duplicates sum into one edge of weight 2
    CHECK(-model::objective(g.problem, {1.0, -1.0}) == doctest::Approx(2.0));
  }
}

TEST_CASE("gset parsing rejects malformed files") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return io::parse_gset(in);
  };
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("2\n"), ParseError);
  CHECK_THROWS_AS(parse("2 1\n1 2\n"), ParseError);
  CHECK_THROWS_AS(parse("2 1\n0 2 1\n"), ParseError);   // 1-based indices
  CHECK_THROWS_AS(parse("2 1\n1 3 1\n"), ParseError);   // out of range
  CHECK_THROWS_AS(parse("2 1\n1 1 1\n"), ParseError);   // self-loop
  CHECK_THROWS_AS(parse("2 2\n1 2 1\n"), ParseError);   // header mismatch
}

TEST_CASE("gset parsing handles a larger synthetic instance") {
  // Torus-like 20x2 ring with unit weights; exercises the sparse path end.
  std::ostringstream file;
  const std::size_t n = 40;
  file << n << ' ' << n << "\n";
  for (std::size_t i = 1; i <= n; ++i)
    file << i << ' ' << (i % n) + 1 << " 1\n";
  std::istringstream in(file.str());
  const auto g = io::parse_gset(in);
  CHECK(g.vertices == n);
  CHECK(g.edge_count == n);
  // Even ring: perfect alternating cut crosses every edge.
  Vec y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = i % 2 ? 1.0 : -1.0;
  CHECK(-model::objective(g.problem, y) == doctest::Approx(double(n)));
}

TEST_CASE("solver runs end to end on a large sparse max-cut instance") {
  // 5000-node ring: stored sparse, solved through the CSR apply path.
  std::ostringstream file;
  const std::size_t n = 5000;
  file << n << ' ' << n << "\n";
  for (std::size_t i = 1; i <= n; ++i) file << i << ' ' << (i % n) + 1 << " 1\n";
  std::istringstream in(file.str());
  const auto g = io::parse_gset(in);
  REQUIRE_FALSE(g.problem.q.is_dense());

  engine::SolverConfig cfg;
  cfg.samples = 8;
  cfg.iterations = 60;
  cfg.seed = 2;
  const auto r = engine::run(g.problem, cfg);
  // -F is the cut value; the even ring cuts all edges at best.
  CHECK(-r.best_objective >= 0.0);
  CHECK(-r.best_objective <= double(n));
  const auto r2 = engine::run(g.problem, cfg);
  CHECK(r.per_sample_objectives == r2.per_sample_objectives);
}

TEST_CASE("csv quoting round trips") {
  CHECK(io::csv_field("plain") == "plain");
  CHECK(io::csv_field("a,b") == "\"a,b\"");
  CHECK(io::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  const auto fields = io::csv_split("plain,\"a,b\",\"say \"\"hi\"\"\",tail");
  REQUIRE(fields.size() == 4);
  CHECK(fields[0] == "plain");
  CHECK(fields[1] == "a,b");
  CHECK(fields[2] == "say \"hi\"");
  CHECK(fields[3] == "tail");
}

TEST_CASE("csv numeric fields parse back to the in-memory value") {
  rng::Stream s(3);
  bench::BenchRow row;
  for (int i = 0; i < 100; ++i) {
    const double v = s.next_gaussian() * std::ldexp(1.0, int(s.next_below(20)) - 10);
    (void)row;
    const std::string text = io::format_exact(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
  }
}

TEST_CASE("registry updates are monotone and carry provenance") {
  io::BestKnownRegistry reg;
  CHECK(reg.update("g1", -10.0, "solver a"));
  CHECK_FALSE(reg.update("g1", -9.0, "worse"));
  CHECK(reg.update("g1", -11.0, "solver b"));
  REQUIRE(reg.lookup("g1").has_value());
  CHECK(reg.lookup("g1")->objective == -11.0);
  CHECK(reg.lookup("g1")->provenance == "solver b");
  CHECK_FALSE(reg.lookup("missing").has_value());

  const std::string path = "registry_test_tmp.csv";
  reg.save_file(path);
  const auto loaded = io::BestKnownRegistry::load_file(path);
  REQUIRE(loaded.lookup("g1").has_value());
  CHECK(loaded.lookup("g1")->objective == -11.0);
  CHECK(loaded.lookup("g1")->provenance == "solver b");
  std::remove(path.c_str());

  // Missing files load as empty registries.
  const auto empty = io::BestKnownRegistry::load_file("does_not_exist_12345.csv");
  CHECK(empty.entries().empty());
}

TEST_CASE("bench report CSV is deterministic and self-consistent") {
  gen::GenSpec spec;
  spec.family = gen::Family::SkDense;
  spec.n = 8;
  spec.count = 2;
  spec.candidates = 40;
  spec.sensitivity_trials = 8;
  spec.seed = 10;
  const auto problems = gen::gen_qubo(spec);
  std::vector<bench::Instance> instances;
  for (std::size_t k = 0; k < problems.size(); ++k)
    instances.push_back({"sk" + std::to_string(k), problems[k], std::nullopt});

  bench::BenchConfig cfg;
  cfg.seeds = {1, 2};
  cfg.aim_iterations = 150;
  cfg.aim_samples = 16;
  cfg.sa_sweeps = 150;
  cfg.sa_restarts = 16;
  const std::vector<bench::SolverKind> solvers = {bench::SolverKind::Aim,
                                                  bench::SolverKind::Sa};

  const auto r1 = bench::run_bench(instances, solvers, cfg);
  cfg.threads = 3;
  const auto r2 = bench::run_bench(instances, solvers, cfg);
  CHECK(r1.to_csv() == r2.to_csv());

  // Two summary rows, one per solver; improvement only on aim rows.
  CHECK(r1.summary.size() == 2);
  for (const auto& row : r1.rows) {
    if (row.solver == "aim") CHECK(row.has_improvement);
    if (row.solver == "sa") CHECK_FALSE(row.has_improvement);
    CHECK(row.has_reference);  // oracle-feasible sizes
    CHECK(row.success_rate >= 0.0);
  }

  // The CSV parses back into the same numbers it was built from.
  std::istringstream csv(r1.to_csv());
  std::string line;
  std::getline(csv, line);  // header
  std::size_t row_idx = 0;
  while (std::getline(csv, line) && row_idx < r1.rows.size()) {
    const auto fields = io::csv_split(line);
    REQUIRE(fields.size() == 10);
    CHECK(fields[0] == r1.rows[row_idx].instance);
    CHECK(fields[1] == r1.rows[row_idx].solver);
    CHECK(std::strtod(fields[2].c_str(), nullptr) == r1.rows[row_idx].best);
    ++row_idx;
  }
  CHECK(row_idx == r1.rows.size());
}
