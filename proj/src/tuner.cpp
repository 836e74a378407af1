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

#include "qumo/tuner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "qumo/error.hpp"

namespace qumo::tuner {

namespace {

bool rank_less(const GridPoint& a, const GridPoint& b) {
  if (a.failed != b.failed) return !a.failed;
  if (a.best != b.best) return a.best < b.best;
  if (a.mean != b.mean) return a.mean < b.mean;
  if (a.alpha0 != b.alpha0) return a.alpha0 < b.alpha0;
  return a.beta0 < b.beta0;
}

std::uint64_t mix64(std::uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ull;
  h ^= h >> 33;
  return h;
}

GridPoint run_point(const QumoProblem& p, const TunePlan& plan, double alpha0,
                    double beta0, std::size_t iterations, std::size_t samples,
                    engine::RunResult* out_run = nullptr) {
  GridPoint g;
  g.alpha0 = alpha0;
  g.beta0 = beta0;
  engine::SolverConfig cfg = plan.base;
  cfg.alpha0 = alpha0;
  cfg.beta0 = beta0;
  cfg.iterations = iterations;
  cfg.samples = samples;
  cfg.seed = point_seed(plan.seed, alpha0, beta0);
  try {
    engine::RunResult r = engine::run(p, cfg);
    g.best = r.best_objective;
    double sum = 0.0;
    for (double v : r.per_sample_objectives) sum += v;
    g.mean = sum / static_cast<double>(r.per_sample_objectives.size());
    if (out_run) *out_run = std::move(r);
  } catch (const Error&) {
    g.failed = true;
    g.best = std::numeric_limits<double>::infinity();
    g.mean = std::numeric_limits<double>::infinity();
  }
  return g;
}

// Points per decade of the original axis, for sizing expansion strips.
std::size_t per_decade(double lo, double hi, std::size_t count) {
  const double decades = std::log10(hi / lo);
  if (!(decades > 0.0)) return std::max<std::size_t>(count, 1);
  return std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(static_cast<double>(count - 1) / decades)));
}

}  // namespace

void TunePlan::validate() const {
  if (!(alpha_lo > 0.0 && alpha_hi >= alpha_lo))
    throw InvalidArgument("TunePlan: alpha bounds must be positive and ordered");
  if (!(beta_lo > 0.0 && beta_hi >= beta_lo))
    throw InvalidArgument("TunePlan: beta bounds must be positive and ordered");
  if (grid_alpha < 1 || grid_beta < 1)
    throw InvalidArgument("TunePlan: grid must have at least one point per axis");
  if (top_k < 1 || top_k > grid_alpha * grid_beta)
    throw InvalidArgument("TunePlan: top_k must lie in [1, grid area]");
  if (explore_iterations < 1 || explore_samples < 1 || deep_iterations < 1 ||
      deep_samples < 1)
    throw InvalidArgument("TunePlan: budgets must be >= 1");
}

std::vector<double> log_axis(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo)) throw InvalidArgument("log_axis: bad bounds");
  if (count == 1) return {lo};
  std::vector<double> axis(count);
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (std::size_t i = 1; i + 1 < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    axis[i] = std::exp(llo + t * (lhi - llo));
  }
  axis.front() = lo;  // exact endpoints; edge tests compare by equality
  axis.back() = hi;
  return axis;
}

std::uint64_t point_seed(std::uint64_t plan_seed, double alpha0, double beta0) {
  const std::uint64_t a = std::bit_cast<std::uint64_t>(alpha0);
  const std::uint64_t b = std::bit_cast<std::uint64_t>(beta0);
  return mix64(plan_seed ^ mix64(a) ^ std::rotl(mix64(b), 17));
}

ExploreResult explore(const QumoProblem& p, const TunePlan& plan) {
  plan.validate();
  ExploreResult er;
  er.alpha_axis = log_axis(plan.alpha_lo, plan.alpha_hi, plan.grid_alpha);
  er.beta_axis = log_axis(plan.beta_lo, plan.beta_hi, plan.grid_beta);
  er.ranked.reserve(plan.grid_alpha * plan.grid_beta);
  for (double a : er.alpha_axis)
    for (double b : er.beta_axis)
      er.ranked.push_back(run_point(p, plan, a, b, plan.explore_iterations,
                                    plan.explore_samples));
  std::sort(er.ranked.begin(), er.ranked.end(), rank_less);
  return er;
}

ExploreResult expand_bounds(const QumoProblem& p, TunePlan& plan,
                            ExploreResult er) {
  for (std::size_t round = 0; round < plan.max_expansions; ++round) {
    const std::size_t k = std::min(plan.top_k, er.ranked.size());
    bool a_lo = false, a_hi = false, b_lo = false, b_hi = false;
    for (std::size_t i = 0; i < k; ++i) {
      const GridPoint& g = er.ranked[i];
      if (g.failed) continue;
      a_lo |= g.alpha0 == plan.alpha_lo;
      a_hi |= g.alpha0 == plan.alpha_hi;
      b_lo |= g.beta0 == plan.beta_lo;
      b_hi |= g.beta0 == plan.beta_hi;
    }
    if (!(a_lo || a_hi || b_lo || b_hi)) return er;

    auto explore_strip = [&](const std::vector<double>& alphas,
                             const std::vector<double>& betas) {
      for (double a : alphas)
        for (double b : betas)
          er.ranked.push_back(run_point(p, plan, a, b, plan.explore_iterations,
                                        plan.explore_samples));
    };
    auto decade_strip = [&](double from, bool up, std::size_t points) {
      // Fresh points past the old edge, ending exactly on the new bound.
      std::vector<double> strip(points);
      const double to = up ? from * 10.0 : from / 10.0;
      for (std::size_t j = 1; j < points; ++j) {
        const double t = static_cast<double>(j) / static_cast<double>(points);
        strip[j - 1] = std::exp(std::log(from) + t * (std::log(to) - std::log(from)));
      }
      strip[points - 1] = to;
      return strip;
    };

    if (a_hi) {
      const std::size_t k_pts = per_decade(plan.alpha_lo, plan.alpha_hi, plan.grid_alpha);
      const auto strip = decade_strip(plan.alpha_hi, true, k_pts);
      explore_strip(strip, er.beta_axis);
      er.alpha_axis.insert(er.alpha_axis.end(), strip.begin(), strip.end());
      plan.alpha_hi *= 10.0;
      er.expansions.push_back({'a', true, plan.alpha_lo, plan.alpha_hi});
    } else if (a_lo) {
      const std::size_t k_pts = per_decade(plan.alpha_lo, plan.alpha_hi, plan.grid_alpha);
      auto strip = decade_strip(plan.alpha_lo, false, k_pts);
      explore_strip(strip, er.beta_axis);
      er.alpha_axis.insert(er.alpha_axis.begin(), strip.begin(), strip.end());
      plan.alpha_lo /= 10.0;
      er.expansions.push_back({'a', false, plan.alpha_lo, plan.alpha_hi});
    } else if (b_hi) {
      const std::size_t k_pts = per_decade(plan.beta_lo, plan.beta_hi, plan.grid_beta);
      const auto strip = decade_strip(plan.beta_hi, true, k_pts);
      explore_strip(er.alpha_axis, strip);
      er.beta_axis.insert(er.beta_axis.end(), strip.begin(), strip.end());
      plan.beta_hi *= 10.0;
      er.expansions.push_back({'b', true, plan.beta_lo, plan.beta_hi});
    } else {
      const std::size_t k_pts = per_decade(plan.beta_lo, plan.beta_hi, plan.grid_beta);
      auto strip = decade_strip(plan.beta_lo, false, k_pts);
      explore_strip(er.alpha_axis, strip);
      er.beta_axis.insert(er.beta_axis.begin(), strip.begin(), strip.end());
      plan.beta_lo /= 10.0;
      er.expansions.push_back({'b', false, plan.beta_lo, plan.beta_hi});
    }
    std::sort(er.alpha_axis.begin(), er.alpha_axis.end());
    std::sort(er.beta_axis.begin(), er.beta_axis.end());
    std::sort(er.ranked.begin(), er.ranked.end(), rank_less);
  }

  // Still edge-bound after the allowed rounds?
  const std::size_t k = std::min(plan.top_k, er.ranked.size());
  for (std::size_t i = 0; i < k; ++i) {
    const GridPoint& g = er.ranked[i];
    if (g.failed) continue;
    if (g.alpha0 == plan.alpha_lo || g.alpha0 == plan.alpha_hi ||
        g.beta0 == plan.beta_lo || g.beta0 == plan.beta_hi) {
      er.expansion_cap_hit = true;
      break;
    }
  }
  return er;
}

TuneResult deep_search(const QumoProblem& p, const TunePlan& plan,
                       const std::vector<GridPoint>& chosen) {
  if (chosen.empty()) throw InvalidArgument("deep_search: no pairs chosen");

  struct PairOutcome {
    GridPoint point;
    engine::RunResult run;
  };
  std::vector<PairOutcome> outcomes;
  outcomes.reserve(chosen.size());
  for (const GridPoint& pick : chosen) {
    PairOutcome o;
    o.point = run_point(p, plan, pick.alpha0, pick.beta0, plan.deep_iterations,
                        plan.deep_samples, &o.run);
    // Min-track against the exploration outcome for the same pair: a better
    // exploration run is reproduced (same seed) rather than discarded.
    if (!pick.failed && pick.best < o.point.best) {
      engine::RunResult cheap;
      GridPoint ge = run_point(p, plan, pick.alpha0, pick.beta0,
                               plan.explore_iterations, plan.explore_samples,
                               &cheap);
      if (!ge.failed && ge.best <= o.point.best) {
        o.point = ge;
        o.run = std::move(cheap);
      }
    }
    outcomes.push_back(std::move(o));
  }
  std::sort(outcomes.begin(), outcomes.end(),
            [](const PairOutcome& a, const PairOutcome& b) {
              return rank_less(a.point, b.point);
            });

  TuneResult tr;
  bool have_run = false;
  for (auto& o : outcomes) {
    if (!have_run && !o.point.failed) {
      tr.best_run = o.run;
      tr.best_alpha0 = o.point.alpha0;
      tr.best_beta0 = o.point.beta0;
      have_run = true;
    }
    tr.deep_stats.push_back(o.point);
    tr.deep_runs.push_back(std::move(o.run));
  }
  if (!have_run) throw Error("deep_search: every chosen pair failed");
  return tr;
}

TuneResult tune(const QumoProblem& p, TunePlan plan) {
  ExploreResult er = expand_bounds(p, plan, explore(p, plan));
  std::vector<GridPoint> chosen;
  for (const GridPoint& g : er.ranked) {
    if (g.failed) break;
    chosen.push_back(g);
    if (chosen.size() == plan.top_k) break;
  }
  if (chosen.empty()) throw Error("tune: exploration failed on every grid point");
  TuneResult tr = deep_search(p, plan, chosen);
  tr.ranked = std::move(er.ranked);
  tr.expansions = std::move(er.expansions);
  tr.expansion_cap_hit = er.expansion_cap_hit;
  return tr;
}

}  // namespace qumo::tuner
