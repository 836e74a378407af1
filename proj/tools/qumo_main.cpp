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

// Command-line front end. Exit codes: 0 success, 1 solver/numeric failure,
// 2 usage or parse errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qumo/baselines.hpp"
#include "qumo/bench.hpp"
#include "qumo/engine.hpp"
#include "qumo/error.hpp"
#include "qumo/gen.hpp"
#include "qumo/io.hpp"
#include "qumo/kernels.hpp"
#include "qumo/metrics.hpp"
#include "qumo/model.hpp"
#include "qumo/transforms.hpp"
#include "qumo/tuner.hpp"

namespace {

using namespace qumo;

struct GlobalOpts {
  unsigned threads = 0;  // 0 = all cores; never affects results
  std::string kernel;    // "", "scalar", "avx2", "neon"
};

void apply_kernel_choice(const std::string& kernel) {
  if (kernel.empty()) return;
  if (kernel == "scalar") kernels::force_isa(kernels::Isa::Scalar);
  else if (kernel == "avx2") kernels::force_isa(kernels::Isa::Avx2);
  else if (kernel == "neon") kernels::force_isa(kernels::Isa::Neon);
  else throw InvalidArgument("unknown kernel '" + kernel + "'");
}

// Solutions print in the domain of the input file, with the objective
// recomputed there so equal assignments print equal values regardless of
// which code path produced them.
void print_solution(const QumoProblem& original, const QumoProblem& solved,
                    const Vec& assignment, std::ostream& out) {
  Vec x = assignment;
  if (solved.domain != original.domain) x = model::map_point(solved, original.domain, x);
  out << "objective " << io::format_exact(model::objective(original, x)) << "\n";
  out << "assignment";
  for (double v : x) out << ' ' << io::format_exact(v);
  out << "\n";
}

engine::Nonlinearity parse_nonlinearity(const std::string& s) {
  if (s == "sign") return engine::Nonlinearity::Sign;
  if (s == "tanh") return engine::Nonlinearity::Tanh;
  if (s == "clamp") return engine::Nonlinearity::Clamp;
  throw InvalidArgument("unknown nonlinearity '" + s + "'");
}

std::uint64_t parse_u64(const std::string& tok) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
  if (end == tok.c_str() || *end != '\0')
    throw InvalidArgument("expected an unsigned integer, got '" + tok + "'");
  return v;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& spec) {
  // "1..10" or "1,2,7"
  std::vector<std::uint64_t> seeds;
  const auto range_pos = spec.find("..");
  if (range_pos != std::string::npos) {
    const std::uint64_t lo = parse_u64(spec.substr(0, range_pos));
    const std::uint64_t hi = parse_u64(spec.substr(range_pos + 2));
    if (hi < lo || hi - lo > 100000) throw InvalidArgument("bad seed range " + spec);
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) seeds.push_back(parse_u64(tok));
  if (seeds.empty()) throw InvalidArgument("empty seed list");
  return seeds;
}

int cmd_solve(const GlobalOpts& g, const std::string& in_path, double alpha0,
              double beta0, double gamma, double dt, std::size_t iters,
              std::size_t samples, std::uint64_t seed, const std::string& nl,
              double tanh_gain, bool nesterov, double noise_sigma,
              bool zero_momentum, bool final_only, const std::string& out_path) {
  const io::NativeProblem np = io::parse_native_file(in_path);
  QumoProblem p = np.base;
  if (np.constrained()) {
    transforms::PenaltyConfig pc;
    p = transforms::constraints_to_qumo(np.as_constrained(), pc).problem;
    std::cerr << "note: mapped " << np.constraints.size()
              << " constraints via penalty slacks (n=" << p.n << ")\n";
  }
  const QumoProblem solved =
      p.domain == Domain::PlusMinusOne ? p : model::domain_shift(p, Domain::PlusMinusOne);

  engine::SolverConfig cfg;
  cfg.alpha0 = alpha0;
  cfg.beta0 = beta0;
  cfg.gamma = gamma;
  cfg.dt = dt;
  cfg.iterations = iters;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.nonlinearity = parse_nonlinearity(nl);
  cfg.tanh_gain = tanh_gain;
  cfg.momentum = nesterov ? engine::Momentum::Nesterov : engine::Momentum::HeavyBall;
  cfg.track_best = !final_only;
  cfg.threads = g.threads;
  if (noise_sigma > 0.0 || zero_momentum) {
    hwsim::NoiseConfig nc;
    nc.sigma = noise_sigma;
    nc.force_zero_momentum = zero_momentum;
    cfg.noise = nc;
  }

  const engine::RunResult r = engine::run(solved, cfg);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    print_solution(p, solved, r.best_assignment, out);
  } else {
    print_solution(p, solved, r.best_assignment, std::cout);
    std::cout << "best_iteration " << r.best_iteration << "\n"
              << "lambda " << io::format_exact(r.lambda_used) << "\n";
  }
  return 0;
}

int cmd_tune(const GlobalOpts& g, const std::string& in_path, std::size_t grid,
             double alpha_lo, double alpha_hi, double beta_lo, double beta_hi,
             std::size_t explore_iters, std::size_t explore_samples,
             std::size_t top_k, std::size_t deep_iters, std::size_t deep_samples,
             std::size_t max_expansions, std::uint64_t seed) {
  const io::NativeProblem np = io::parse_native_file(in_path);
  QumoProblem p = np.base;
  if (np.constrained())
    p = transforms::constraints_to_qumo(np.as_constrained(), {}).problem;
  if (p.domain != Domain::PlusMinusOne) p = model::domain_shift(p, Domain::PlusMinusOne);

  tuner::TunePlan plan;
  plan.alpha_lo = alpha_lo;
  plan.alpha_hi = alpha_hi;
  plan.beta_lo = beta_lo;
  plan.beta_hi = beta_hi;
  plan.grid_alpha = plan.grid_beta = grid;
  plan.explore_iterations = explore_iters;
  plan.explore_samples = explore_samples;
  plan.top_k = top_k;
  plan.deep_iterations = deep_iters;
  plan.deep_samples = deep_samples;
  plan.max_expansions = max_expansions;
  plan.seed = seed;
  plan.base.threads = g.threads;

  const tuner::TuneResult tr = tuner::tune(p, plan);
  std::cout << "alpha0 beta0 best mean\n";
  for (const auto& s : tr.deep_stats)
    std::cout << io::format_exact(s.alpha0) << ' ' << io::format_exact(s.beta0)
              << ' ' << io::format_exact(s.best) << ' ' << io::format_exact(s.mean)
              << "\n";
  std::cout << "chosen " << io::format_exact(tr.best_alpha0) << ' '
            << io::format_exact(tr.best_beta0) << "\n"
            << "best_objective " << io::format_exact(tr.best_run.best_objective)
            << "\n";
  for (const auto& e : tr.expansions)
    std::cout << "expanded " << e.axis << (e.upper ? " up" : " down") << " to ["
              << io::format_exact(e.new_lo) << ", " << io::format_exact(e.new_hi)
              << "]\n";
  return 0;
}

int cmd_generate(const GlobalOpts& g, const std::string& family, std::size_t n,
                 std::size_t n_continuous, unsigned bits, std::size_t count,
                 std::size_t candidates, std::size_t trials, std::uint64_t seed,
                 bool no_select, const std::string& out_prefix) {
  gen::GenSpec spec;
  spec.n = n;
  spec.n_continuous = n_continuous;
  spec.bits = bits;
  spec.count = count;
  spec.candidates = candidates;
  spec.sensitivity_trials = trials;
  spec.seed = seed;
  spec.select = !no_select;
  spec.threads = g.threads == 0 ? 0 : g.threads;

  auto path_for = [&](std::size_t k) {
    return out_prefix + "_" + std::to_string(k) + ".qumo";
  };

  if (family == "sk" || family == "3reg") {
    spec.family = family == "sk" ? gen::Family::SkDense : gen::Family::ThreeRegular;
    const auto problems = gen::gen_qubo(spec);
    for (std::size_t k = 0; k < problems.size(); ++k) {
      io::write_native_file(path_for(k), problems[k]);
      std::cout << path_for(k) << "\n";
    }
  } else if (family == "planted") {
    spec.family = gen::Family::PlantedQumo;
    const auto batch = gen::gen_planted_qumo(spec);
    for (std::size_t k = 0; k < batch.instances.size(); ++k) {
      const auto& inst = batch.instances[k];
      io::write_native_file(path_for(k), inst.problem);
      std::cout << path_for(k) << " planted_objective "
                << io::format_exact(model::objective(inst.problem, inst.planted))
                << "\n";
    }
    if (batch.budget_exhausted) {
      std::cerr << "warning: verification budget exhausted, emitted "
                << batch.instances.size() << "/" << count << "\n";
    }
  } else if (family == "settlement") {
    spec.family = gen::Family::SettlementLike;
    const auto cp = gen::gen_settlement_like(spec);
    const std::string path = out_prefix + ".qumo";
    io::write_native_file(path, cp.base, cp.constraints);
    std::cout << path << "\n";
  } else {
    throw InvalidArgument("unknown family '" + family + "'");
  }
  return 0;
}

int cmd_convert(const std::string& in_path, const std::string& out_path,
                const std::string& to, const std::string& encoding,
                unsigned bits, bool from_gset) {
  QumoProblem p;
  std::vector<transforms::LinearConstraint> constraints;
  if (from_gset) {
    p = io::parse_gset_file(in_path).problem;
  } else {
    io::NativeProblem np = io::parse_native_file(in_path);
    p = np.base;
    constraints = std::move(np.constraints);
  }

  if (to == "qumo") {
    if (!constraints.empty())
      p = transforms::constraints_to_qumo({p, constraints}, {}).problem;
  } else if (to == "zero-one" || to == "plus-minus") {
    const Domain target = to == "zero-one" ? Domain::ZeroOne : Domain::PlusMinusOne;
    if (p.domain != target) p = model::domain_shift(p, target);
  } else if (to == "ising" || to == "qubo") {
    const Domain target = to == "qubo" ? Domain::ZeroOne : Domain::PlusMinusOne;
    if (p.domain != target) p = transforms::qubo_ising_roundtrip(p);
  } else if (to == "slack-qubo") {
    if (!constraints.empty())
      p = transforms::constraints_to_qumo({p, constraints}, {}).problem;
    const auto enc = encoding == "unary" ? transforms::SlackEncoding::Unary
                                         : transforms::SlackEncoding::Binary;
    p = transforms::slack_to_qubo(p, enc, bits).problem;
  } else {
    throw InvalidArgument("unknown conversion target '" + to + "'");
  }
  io::write_native_file(out_path, p);
  std::cout << out_path << " n=" << p.n << " nnz=" << p.q.nonzeros() << "\n";
  return 0;
}

int cmd_oracle(const std::string& in_path, double grid_resolution) {
  const io::NativeProblem np = io::parse_native_file(in_path);
  if (np.constrained()) {
    // Exhaustive search over the original binary variables under the
    // constraints themselves.
    const auto cp = np.as_constrained();
    if (!cp.base.all_binary())
      throw InvalidArgument("constrained oracle supports all-binary bases");
    if (cp.base.n > 24) throw ResourceLimit("constrained oracle: n > 24");
    const double lo = cp.base.box_lo(), hi = cp.base.box_hi();
    double best = std::numeric_limits<double>::infinity();
    Vec best_x;
    Vec x(cp.base.n, lo);
    for (std::size_t mask = 0; mask < (std::size_t{1} << cp.base.n); ++mask) {
      for (std::size_t i = 0; i < cp.base.n; ++i) x[i] = (mask >> i) & 1 ? hi : lo;
      if (!transforms::feasible(cp, x)) continue;
      const double f = model::objective(cp.base, x);
      if (f < best) {
        best = f;
        best_x = x;
      }
    }
    if (best_x.empty()) {
      std::cerr << "infeasible\n";
      return 1;
    }
    print_solution(cp.base, cp.base, best_x, std::cout);
    return 0;
  }
  const auto bf = baselines::brute_force(np.base, grid_resolution);
  print_solution(np.base, np.base, bf.assignment, std::cout);
  return 0;
}

int cmd_bench(const GlobalOpts& g, const std::vector<std::string>& inputs,
              const std::string& suite, std::size_t suite_count,
              std::size_t suite_n, const std::string& solvers_arg,
              const std::string& seeds_arg, std::size_t budget,
              double tol_rel, double tol_abs, const std::string& out_path,
              const std::string& registry, bool update_registry,
              std::uint64_t gen_seed) {
  std::vector<bench::Instance> instances;
  for (const auto& path : inputs) {
    io::NativeProblem np = io::parse_native_file(path);
    QumoProblem p = np.base;
    if (np.constrained())
      p = transforms::constraints_to_qumo(np.as_constrained(), {}).problem;
    instances.push_back({path, std::move(p), std::nullopt});
  }
  if (!suite.empty()) {
    gen::GenSpec spec;
    spec.seed = gen_seed;
    spec.count = suite_count;
    if (suite == "planted") {
      spec.family = gen::Family::PlantedQumo;
      spec.n = suite_n == 0 ? 7 : suite_n;
      spec.n_continuous = 2;
      const auto batch = gen::gen_planted_qumo(spec);
      for (std::size_t k = 0; k < batch.instances.size(); ++k) {
        const auto& inst = batch.instances[k];
        instances.push_back(
            {"planted_" + std::to_string(k), inst.problem,
             model::objective(inst.problem, inst.planted)});
      }
    } else if (suite == "sk" || suite == "3reg") {
      spec.family = suite == "sk" ? gen::Family::SkDense : gen::Family::ThreeRegular;
      spec.n = suite_n == 0 ? 12 : suite_n;
      spec.candidates = std::max<std::size_t>(suite_count * 40, 400);
      const auto problems = gen::gen_qubo(spec);
      for (std::size_t k = 0; k < problems.size(); ++k)
        instances.push_back({suite + "_" + std::to_string(k), problems[k], std::nullopt});
    } else {
      throw InvalidArgument("unknown suite '" + suite + "'");
    }
  }

  std::vector<bench::SolverKind> solvers;
  {
    std::stringstream ss(solvers_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      const auto k = bench::parse_solver(tok);
      if (!k) throw InvalidArgument("unknown solver '" + tok + "'");
      solvers.push_back(*k);
    }
  }

  bench::BenchConfig cfg;
  cfg.seeds = parse_seed_list(seeds_arg);
  cfg.tol_rel = tol_rel;
  cfg.tol_abs = tol_abs;
  cfg.threads = g.threads;
  cfg.registry_path = registry;
  cfg.update_registry = update_registry;
  if (budget > 0) {
    cfg.aim_iterations = budget;
    cfg.sa_sweeps = budget;
    cfg.pt_sweeps = budget;
    cfg.hopfield_iterations = budget;
    cfg.sb_iterations = budget;
  }

  const bench::BenchReport report = bench::run_bench(instances, solvers, cfg);
  const std::string csv = report.to_csv();
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    out << csv;
  } else {
    std::cout << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QUMO solver toolkit: momentum-annealed gradient descent with "
               "transforms, generators, baselines and a benchmark harness"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--threads", g.threads, "worker threads (0 = all cores; never affects results)");
  app.add_option("--kernel", g.kernel, "force kernel backend: scalar|avx2|neon");

  // solve
  auto* solve = app.add_subcommand("solve", "run the solver on a .qumo file");
  std::string in_path, out_path, nl = "sign";
  double alpha0 = 1.0, beta0 = 1.0, gamma = 0.9, dt = 1.0, tanh_gain = 1.0;
  double noise_sigma = 0.0;
  std::size_t iters = 1000, samples = 32;
  std::uint64_t seed = 0;
  bool nesterov = false, zero_momentum = false, final_only = false;
  solve->add_option("--in", in_path, "input problem (.qumo)")->required();
  solve->add_option("--alpha0", alpha0, "scaled gradient weight");
  solve->add_option("--beta0", beta0, "annealing start");
  solve->add_option("--gamma", gamma, "momentum in [0,1)");
  solve->add_option("--dt", dt, "time step");
  solve->add_option("--iters", iters, "iterations T");
  solve->add_option("--samples", samples, "independent samples");
  solve->add_option("--seed", seed, "64-bit seed");
  solve->add_option("--nonlinearity", nl, "sign|tanh|clamp");
  solve->add_option("--tanh-gain", tanh_gain, "gain for tanh nonlinearity");
  solve->add_flag("--nesterov", nesterov, "look-ahead momentum variant");
  solve->add_option("--noise-sigma", noise_sigma, "hardware-noise emulation std");
  solve->add_flag("--zero-momentum", zero_momentum, "zero momentum (noisy emulation)");
  solve->add_flag("--final-only", final_only, "hardware-style final readout only");
  solve->add_option("--out", out_path, "write solution to file");

  // tune
  auto* tune = app.add_subcommand("tune", "two-phase (alpha0, beta0) search");
  std::string tune_in;
  std::size_t grid = 8, explore_iters = 200, explore_samples = 16, top_k = 4;
  std::size_t deep_iters = 2000, deep_samples = 256, max_expansions = 2;
  double alpha_lo = 1e-2, alpha_hi = 1e1, beta_lo = 1e-2, beta_hi = 1e1;
  std::uint64_t tune_seed = 0;
  tune->add_option("--in", tune_in, "input problem (.qumo)")->required();
  tune->add_option("--grid", grid, "grid points per axis");
  tune->add_option("--alpha-min", alpha_lo, "alpha0 lower bound");
  tune->add_option("--alpha-max", alpha_hi, "alpha0 upper bound");
  tune->add_option("--beta-min", beta_lo, "beta0 lower bound");
  tune->add_option("--beta-max", beta_hi, "beta0 upper bound");
  tune->add_option("--explore-iters", explore_iters, "exploration iterations");
  tune->add_option("--explore-samples", explore_samples, "exploration samples");
  tune->add_option("--top-k", top_k, "pairs promoted to deep search");
  tune->add_option("--deep-iters", deep_iters, "deep-search iterations");
  tune->add_option("--deep-samples", deep_samples, "deep-search samples");
  tune->add_option("--max-expansions", max_expansions, "bound expansion rounds");
  tune->add_option("--seed", tune_seed, "64-bit seed");

  // generate
  auto* generate = app.add_subcommand("generate", "emit benchmark instances");
  std::string family = "sk", out_prefix = "instance";
  std::size_t gn = 8, gnc = 1, gcount = 10, gcand = 2000, gtrials = 25;
  unsigned gbits = 7;
  std::uint64_t gseed = 0;
  bool no_select = false;
  generate->add_option("--family", family, "sk|3reg|planted|settlement")->required();
  generate->add_option("--n", gn, "variable count");
  generate->add_option("--n-continuous", gnc, "continuous variables (planted)");
  generate->add_option("--bits", gbits, "weight precision in bits");
  generate->add_option("--count", gcount, "instances to emit");
  generate->add_option("--candidates", gcand, "candidates before selection");
  generate->add_option("--sensitivity-trials", gtrials, "perturbation trials");
  generate->add_option("--seed", gseed, "64-bit seed");
  generate->add_flag("--no-select", no_select, "skip noise-sensitivity selection");
  generate->add_option("--out-prefix", out_prefix, "output path prefix");

  // convert
  auto* convert = app.add_subcommand("convert", "re-express a problem");
  std::string conv_in, conv_out, conv_to = "qumo", conv_enc = "binary";
  unsigned conv_bits = 7;
  bool from_gset = false;
  convert->add_option("--in", conv_in, "input file")->required();
  convert->add_option("--out", conv_out, "output .qumo file")->required();
  convert->add_option("--to", conv_to,
                      "qumo|zero-one|plus-minus|qubo|ising|slack-qubo");
  convert->add_option("--encoding", conv_enc, "unary|binary (slack-qubo)");
  convert->add_option("--bits", conv_bits, "bits per continuous variable");
  convert->add_flag("--from-gset", from_gset, "input is a G-Set max-cut file");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exhaustive optimum");
  std::string oracle_in;
  double grid_resolution = 1.0 / 128.0;
  oracle->add_option("--in", oracle_in, "input problem (.qumo)")->required();
  oracle->add_option("--grid-resolution", grid_resolution,
                     "continuous grid step (fraction of the box)");

  // bench
  auto* benchcmd = app.add_subcommand("bench", "run the benchmark harness");
  std::vector<std::string> bench_inputs;
  std::string suite, bench_solvers = "aim", bench_seeds = "1", bench_out, bench_registry;
  std::size_t suite_count = 10, suite_n = 0, bench_budget = 0;
  double bench_tol_rel = 0.005, bench_tol_abs = 0.0;
  bool bench_update_registry = false;
  std::uint64_t bench_gen_seed = 0;
  benchcmd->add_option("--instances", bench_inputs, "instance files (.qumo)");
  benchcmd->add_option("--suite", suite, "generated suite: planted|sk|3reg");
  benchcmd->add_option("--suite-count", suite_count, "suite instance count");
  benchcmd->add_option("--suite-n", suite_n, "suite variable count");
  benchcmd->add_option("--solvers", bench_solvers, "comma list: aim,sa,pt,hopfield,sb,oracle");
  benchcmd->add_option("--seeds", bench_seeds, "seed list '1,2,3' or range '1..10'");
  benchcmd->add_option("--budget", bench_budget, "iterations/sweeps per run (0 = defaults)");
  benchcmd->add_option("--tol-rel", bench_tol_rel, "relative success tolerance");
  benchcmd->add_option("--tol-abs", bench_tol_abs, "absolute success tolerance");
  benchcmd->add_option("--out", bench_out, "write CSV report here");
  benchcmd->add_option("--registry", bench_registry, "best-known registry CSV");
  benchcmd->add_flag("--update-registry", bench_update_registry,
                     "record improvements with provenance");
  benchcmd->add_option("--gen-seed", bench_gen_seed, "suite generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version land here too; only real parse trouble exits 2.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    apply_kernel_choice(g.kernel);
    if (solve->parsed())
      return cmd_solve(g, in_path, alpha0, beta0, gamma, dt, iters, samples, seed,
                       nl, tanh_gain, nesterov, noise_sigma, zero_momentum,
                       final_only, out_path);
    if (tune->parsed())
      return cmd_tune(g, tune_in, grid, alpha_lo, alpha_hi, beta_lo, beta_hi,
                      explore_iters, explore_samples, top_k, deep_iters,
                      deep_samples, max_expansions, tune_seed);
    if (generate->parsed())
      return cmd_generate(g, family, gn, gnc, gbits, gcount, gcand, gtrials, gseed,
                          no_select, out_prefix);
    if (convert->parsed())
      return cmd_convert(conv_in, conv_out, conv_to, conv_enc, conv_bits, from_gset);
    if (oracle->parsed()) return cmd_oracle(oracle_in, grid_resolution);
    if (benchcmd->parsed())
      return cmd_bench(g, bench_inputs, suite, suite_count, suite_n, bench_solvers,
                       bench_seeds, bench_budget, bench_tol_rel, bench_tol_abs,
                       bench_out, bench_registry, bench_update_registry,
                       bench_gen_seed);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
