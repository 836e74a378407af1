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

#include "qumo/bench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qumo/baselines.hpp"
#include "qumo/engine.hpp"
#include "qumo/error.hpp"
#include "qumo/io.hpp"
#include "qumo/transforms.hpp"
#include "qumo/tuner.hpp"

namespace qumo::bench {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

// One solver execution on one (already adapted) problem.
struct SolverOutcome {
  std::vector<double> objectives;  // per independent sample/restart, pooled
  double best = std::numeric_limits<double>::infinity();
};

QumoProblem to_engine_domain(const QumoProblem& p) {
  return p.domain == Domain::PlusMinusOne ? p
                                          : model::domain_shift(p, Domain::PlusMinusOne);
}

QumoProblem to_binary(const QumoProblem& p) {
  if (p.all_binary()) return p;
  // Continuous variables enter Monte Carlo solvers through the bit encoding.
  return transforms::slack_to_qubo(p, transforms::SlackEncoding::Binary, 7).problem;
}

std::size_t solver_budget(SolverKind kind, const BenchConfig& cfg) {
  switch (kind) {
    case SolverKind::Aim: {
      std::size_t deep = cfg.aim_iterations * cfg.aim_samples;
      if (!cfg.aim_tune) return deep;
      const std::size_t explore_t = std::max<std::size_t>(50, cfg.aim_iterations / 8);
      return 36 * explore_t * 8 + 3 * deep;
    }
    case SolverKind::Sa:
      return cfg.sa_sweeps * cfg.sa_restarts;
    case SolverKind::Pt:
      return cfg.pt_sweeps * cfg.pt_replicas * cfg.pt_restarts;
    case SolverKind::Hopfield:
      return cfg.hopfield_iterations * cfg.hopfield_samples;
    case SolverKind::Sb:
      return cfg.sb_iterations * cfg.sb_samples;
    case SolverKind::Oracle:
      return 1;
  }
  return 0;
}

std::string solver_digest(SolverKind kind, const BenchConfig& cfg) {
  std::ostringstream s;
  s << solver_name(kind) << ";tol_rel=" << io::format_exact(cfg.tol_rel)
    << ";tol_abs=" << io::format_exact(cfg.tol_abs);
  switch (kind) {
    case SolverKind::Aim:
      s << ";iters=" << cfg.aim_iterations << ";samples=" << cfg.aim_samples
        << ";tune=" << (cfg.aim_tune ? 1 : 0);
      break;
    case SolverKind::Sa:
      s << ";sweeps=" << cfg.sa_sweeps << ";restarts=" << cfg.sa_restarts;
      break;
    case SolverKind::Pt:
      s << ";sweeps=" << cfg.pt_sweeps << ";replicas=" << cfg.pt_replicas
        << ";restarts=" << cfg.pt_restarts;
      break;
    case SolverKind::Hopfield:
      s << ";iters=" << cfg.hopfield_iterations << ";samples=" << cfg.hopfield_samples;
      break;
    case SolverKind::Sb:
      s << ";iters=" << cfg.sb_iterations << ";samples=" << cfg.sb_samples;
      break;
    case SolverKind::Oracle:
      s << ";grid=" << io::format_exact(cfg.oracle_grid);
      break;
  }
  for (std::uint64_t seed : cfg.seeds) s << ";seed=" << seed;
  return hex16(fnv1a(s.str()));
}

SolverOutcome run_solver(SolverKind kind, const Instance& inst,
                         const BenchConfig& cfg) {
  SolverOutcome out;
  auto absorb = [&](const std::vector<double>& objs) {
    for (double v : objs) {
      out.objectives.push_back(v);
      out.best = std::min(out.best, v);
    }
  };

  for (std::uint64_t seed : cfg.seeds) {
    switch (kind) {
      case SolverKind::Aim: {
        const QumoProblem p = to_engine_domain(inst.problem);
        if (cfg.aim_tune) {
          tuner::TunePlan plan;
          plan.grid_alpha = plan.grid_beta = 6;
          plan.explore_iterations = std::max<std::size_t>(50, cfg.aim_iterations / 8);
          plan.explore_samples = 8;
          plan.top_k = 3;
          plan.deep_iterations = cfg.aim_iterations;
          plan.deep_samples = cfg.aim_samples;
          plan.seed = seed;
          plan.base.threads = cfg.threads;
          const tuner::TuneResult tr = tuner::tune(p, plan);
          absorb(tr.best_run.per_sample_objectives);
        } else {
          engine::SolverConfig sc;
          sc.iterations = cfg.aim_iterations;
          sc.samples = cfg.aim_samples;
          sc.seed = seed;
          sc.threads = cfg.threads;
          absorb(engine::run(p, sc).per_sample_objectives);
        }
        break;
      }
      case SolverKind::Sa: {
        baselines::SaConfig sc;
        sc.sweeps = cfg.sa_sweeps;
        sc.restarts = cfg.sa_restarts;
        sc.seed = seed;
        sc.threads = cfg.threads;
        absorb(baselines::simulated_annealing(to_binary(inst.problem), sc)
                   .per_sample_objectives);
        break;
      }
      case SolverKind::Pt: {
        baselines::PtConfig pc;
        pc.sweeps = cfg.pt_sweeps;
        pc.replicas = cfg.pt_replicas;
        pc.restarts = cfg.pt_restarts;
        pc.seed = seed;
        pc.threads = cfg.threads;
        absorb(baselines::parallel_tempering(to_binary(inst.problem), pc)
                   .per_sample_objectives);
        break;
      }
      case SolverKind::Hopfield: {
        baselines::HopfieldConfig hc;
        hc.iterations = cfg.hopfield_iterations;
        hc.samples = cfg.hopfield_samples;
        hc.seed = seed;
        hc.threads = cfg.threads;
        absorb(baselines::hopfield_run(to_engine_domain(inst.problem), hc)
                   .per_sample_objectives);
        break;
      }
      case SolverKind::Sb: {
        baselines::SbConfig bc;
        bc.iterations = cfg.sb_iterations;
        bc.samples = cfg.sb_samples;
        bc.seed = seed;
        bc.threads = cfg.threads;
        absorb(baselines::simulated_bifurcation_run(
                   to_engine_domain(to_binary(inst.problem)), bc)
                   .per_sample_objectives);
        break;
      }
      case SolverKind::Oracle: {
        const auto bf = baselines::brute_force(inst.problem, cfg.oracle_grid);
        absorb({bf.objective});
        break;
      }
    }
    if (kind == SolverKind::Oracle) break;  // seed-independent
  }
  return out;
}

bool oracle_feasible(const QumoProblem& p, double grid) {
  const std::size_t nb = p.count_binary();
  const std::size_t nc = p.n - nb;
  if (nb > 22 || nc > 3) return false;
  const double steps = std::round(1.0 / grid) + 1.0;
  return std::pow(2.0, static_cast<double>(nb)) * std::pow(steps, static_cast<double>(nc)) <=
         3e7;
}

}  // namespace

std::optional<SolverKind> parse_solver(const std::string& name) {
  if (name == "aim") return SolverKind::Aim;
  if (name == "sa") return SolverKind::Sa;
  if (name == "pt") return SolverKind::Pt;
  if (name == "hopfield") return SolverKind::Hopfield;
  if (name == "sb") return SolverKind::Sb;
  if (name == "oracle") return SolverKind::Oracle;
  return std::nullopt;
}

const char* solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::Aim:
      return "aim";
    case SolverKind::Sa:
      return "sa";
    case SolverKind::Pt:
      return "pt";
    case SolverKind::Hopfield:
      return "hopfield";
    case SolverKind::Sb:
      return "sb";
    case SolverKind::Oracle:
      return "oracle";
  }
  return "?";
}

std::string BenchReport::to_csv() const {
  std::ostringstream out;
  out << "instance,solver,best,reference,success_rate,gap_percent,"
         "improvement_percent,budget,digest,warning\n";
  auto emit = [&](const BenchRow& r) {
    out << io::csv_field(r.instance) << ',' << io::csv_field(r.solver) << ','
        << (r.has_best ? io::format_exact(r.best) : "") << ','
        << (r.has_reference ? io::format_exact(r.reference) : "") << ','
        << (r.success_rate >= 0.0 ? io::format_exact(r.success_rate) : "") << ','
        << (r.has_gap ? io::format_exact(r.gap_percent) : "") << ','
        << (r.has_improvement ? io::format_exact(r.improvement_percent) : "") << ','
        << r.budget << ',' << r.digest << ',' << io::csv_field(r.warning) << '\n';
  };
  for (const auto& r : rows) emit(r);
  for (const auto& r : summary) emit(r);
  return out.str();
}

BenchReport run_bench(const std::vector<Instance>& instances,
                      const std::vector<SolverKind>& solvers,
                      const BenchConfig& cfg) {
  if (instances.empty()) throw InvalidArgument("run_bench: no instances");
  if (solvers.empty()) throw InvalidArgument("run_bench: no solvers");
  if (cfg.seeds.empty()) throw InvalidArgument("run_bench: no seeds");

  io::BestKnownRegistry registry;
  if (!cfg.registry_path.empty())
    registry = io::BestKnownRegistry::load_file(cfg.registry_path);

  BenchReport report;

  for (const Instance& inst : instances) {
    std::vector<SolverOutcome> outcomes(solvers.size());
    for (std::size_t si = 0; si < solvers.size(); ++si)
      outcomes[si] = run_solver(solvers[si], inst, cfg);

    // Reference: explicit value, cheap oracle, registry, then best-seen.
    double reference = 0.0;
    bool have_ref = false;
    std::string ref_warning;
    if (inst.reference) {
      reference = *inst.reference;
      have_ref = true;
    } else if (cfg.oracle_reference && oracle_feasible(inst.problem, cfg.oracle_grid)) {
      reference = baselines::brute_force(inst.problem, cfg.oracle_grid).objective;
      have_ref = true;
    } else if (const auto reg = registry.lookup(inst.id)) {
      reference = reg->objective;
      have_ref = true;
    } else {
      reference = std::numeric_limits<double>::infinity();
      for (const auto& o : outcomes) reference = std::min(reference, o.best);
      ref_warning = "no reference; scoring against best seen";
    }

    metrics::Tolerance tol{cfg.tol_abs, cfg.tol_rel};

    for (std::size_t si = 0; si < solvers.size(); ++si) {
      const SolverOutcome& o = outcomes[si];
      BenchRow row;
      row.instance = inst.id;
      row.solver = solver_name(solvers[si]);
      row.best = o.best;
      row.has_best = !o.objectives.empty();
      row.reference = reference;
      row.has_reference = have_ref;
      row.warning = ref_warning;
      row.budget = solver_budget(solvers[si], cfg);
      row.digest = solver_digest(solvers[si], cfg);
      row.success_rate = metrics::success_rate(o.objectives, reference, tol);
      try {
        row.gap_percent = metrics::optimality_gap(o.best, reference);
        row.has_gap = true;
      } catch (const UndefinedGap&) {
        row.gap_percent = std::abs(o.best - reference);
        row.has_gap = true;
        row.gap_is_absolute = true;
        row.warning += (row.warning.empty() ? "" : "; ");
        row.warning += "zero reference: absolute gap";
      }

      if (solvers[si] == SolverKind::Aim && solvers.size() > 1) {
        double best_rest = std::numeric_limits<double>::infinity();
        for (std::size_t sj = 0; sj < solvers.size(); ++sj)
          if (sj != si) best_rest = std::min(best_rest, outcomes[sj].best);
        const double best_known = std::min({reference, o.best, best_rest});
        try {
          row.improvement_percent =
              metrics::objective_improvement(o.best, best_rest, best_known).percent;
          row.has_improvement = true;
        } catch (const Error&) {
        }
      }
      report.rows.push_back(std::move(row));
    }

    if (cfg.update_registry && !cfg.registry_path.empty()) {
      for (std::size_t si = 0; si < solvers.size(); ++si) {
        std::ostringstream prov;
        prov << solver_name(solvers[si]) << " digest "
             << solver_digest(solvers[si], cfg);
        registry.update(inst.id, outcomes[si].best, prov.str());
      }
    }
  }

  // Per-solver summary: means over the instance rows.
  for (const SolverKind kind : solvers) {
    BenchRow s;
    s.instance = "summary";
    s.solver = solver_name(kind);
    s.digest = solver_digest(kind, cfg);
    s.budget = solver_budget(kind, cfg);
    double sum_best = 0.0, sum_rate = 0.0, sum_gap = 0.0, sum_imp = 0.0;
    std::size_t n_rows = 0, n_gap = 0, n_imp = 0;
    for (const auto& r : report.rows) {
      if (r.solver != solver_name(kind)) continue;
      ++n_rows;
      sum_best += r.best;
      sum_rate += r.success_rate;
      if (r.has_gap && !r.gap_is_absolute) {
        sum_gap += r.gap_percent;
        ++n_gap;
      }
      if (r.has_improvement) {
        sum_imp += r.improvement_percent;
        ++n_imp;
      }
    }
    if (n_rows > 0) {
      s.best = sum_best / static_cast<double>(n_rows);
      s.has_best = true;
      s.success_rate = sum_rate / static_cast<double>(n_rows);
    }
    if (n_gap > 0) {
      s.gap_percent = sum_gap / static_cast<double>(n_gap);
      s.has_gap = true;
    }
    if (n_imp > 0) {
      s.improvement_percent = sum_imp / static_cast<double>(n_imp);
      s.has_improvement = true;
    }
    report.summary.push_back(std::move(s));
  }

  if (cfg.update_registry && !cfg.registry_path.empty())
    registry.save_file(cfg.registry_path);

  return report;
}

}  // namespace qumo::bench
