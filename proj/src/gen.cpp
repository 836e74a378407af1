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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qumo/baselines.hpp"
#include "qumo/error.hpp"
#include "qumo/linalg.hpp"
#include "qumo/parallel.hpp"
#include "qumo/rng.hpp"

namespace qumo::gen {

namespace {

constexpr std::size_t kGridSteps = 128;  // 7-bit verification grid

void check_bits(unsigned bits) {
  if (bits < 1 || bits > 16)
    throw InvalidArgument("gen: weight precision must lie in [1, 16] bits");
}

double joint_max_abs(const SymWeights& q, const Vec& b) {
  double m = q.max_abs();
  for (double v : b) m = std::max(m, std::abs(v));
  return m;
}

// Spin vector with the first nonzero entry positive; spin problems with
// b == 0 have a global flip symmetry, so minimizers compare canonically.
Vec canonical_spins(Vec v) {
  for (double x : v) {
    if (x > 0.0) return v;
    if (x < 0.0) {
      for (double& e : v) e = -e;
      return v;
    }
  }
  return v;
}

bool same_vector(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

// Uniform 3-regular graph via the pairing model, rejecting self-loops and
// multi-edges.
std::vector<std::pair<std::size_t, std::size_t>> three_regular_edges(
    std::size_t n, rng::Stream& stream) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::size_t> stubs;
    stubs.reserve(3 * n);
    for (std::size_t v = 0; v < n; ++v)
      for (int d = 0; d < 3; ++d) stubs.push_back(v);
    for (std::size_t i = stubs.size(); i > 1; --i)
      std::swap(stubs[i - 1], stubs[stream.next_below(i)]);

    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<char> seen(n * n, 0);
    bool ok = true;
    for (std::size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
      std::size_t u = stubs[i], v = stubs[i + 1];
      if (u == v) ok = false;
      if (ok) {
        if (u > v) std::swap(u, v);
        if (seen[u * n + v]) ok = false;
        seen[u * n + v] = 1;
        edges.emplace_back(u, v);
      }
    }
    if (ok) return edges;
  }
  throw Error("gen: failed to sample a simple 3-regular graph");
}

}  // namespace

// Signed levels per side: 2^(bits-1) - 1, floored at 1 so a 1-bit weight
// still distinguishes {0, +-max}.
static double level_count(unsigned bits) {
  return static_cast<double>(std::max(1u, (1u << (bits - 1)) - 1));
}

double quantize_lsb(const SymWeights& q, const Vec& b, unsigned bits) {
  check_bits(bits);
  const double scale = joint_max_abs(q, b);
  if (scale == 0.0) return 0.0;
  return scale / level_count(bits);
}

std::pair<SymWeights, Vec> quantize_weights(const SymWeights& q, const Vec& b,
                                            unsigned bits) {
  check_bits(bits);
  const double scale = joint_max_abs(q, b);
  if (scale == 0.0) return {q, b};
  const double lsb = scale / level_count(bits);
  auto snap = [&](double v) { return std::round(v / lsb) * lsb; };

  const std::size_t n = q.size();
  std::vector<Triplet> ts;
  q.for_each_upper([&](std::size_t i, std::size_t j, double v) {
    const double s = snap(v);
    if (s != 0.0) ts.push_back({i, j, s});
  });
  Vec bq(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) bq[i] = snap(b[i]);
  return {SymWeights::from_triplets(n, ts), std::move(bq)};
}

std::vector<QumoProblem> gen_qubo(const GenSpec& spec) {
  if (spec.family != Family::SkDense && spec.family != Family::ThreeRegular)
    throw InvalidArgument("gen_qubo: family must be SkDense or ThreeRegular");
  check_bits(spec.bits);
  const std::size_t n = spec.n;
  if (n < 2) throw InvalidArgument("gen_qubo: need at least 2 variables");
  if (spec.family == Family::ThreeRegular && (n % 2 != 0 || n < 4))
    throw InvalidArgument("gen_qubo: three-regular graphs need even n >= 4");
  if (spec.select && n > 24)
    throw ResourceLimit(
        "gen_qubo: sensitivity selection needs n <= 24 (disable selection to "
        "generate anyway)");

  const std::size_t n_cands = spec.select ? std::max(spec.candidates, spec.count)
                                          : spec.count;

  struct Candidate {
    QumoProblem problem;
    double sensitivity = 0.0;
    bool rejected = false;
  };
  std::vector<Candidate> cands(n_cands);

  parallel_for(n_cands, spec.threads, [&](std::size_t c) {
    rng::Stream stream(rng::sample_key(spec.seed, c));
    std::vector<Triplet> ts;
    if (spec.family == Family::SkDense) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          ts.push_back({i, j, stream.next_gaussian()});
    } else {
      for (const auto& [u, v] : three_regular_edges(n, stream))
        ts.push_back({u, v, stream.next_gaussian()});
    }
    auto [q, b] = quantize_weights(SymWeights::from_triplets(n, ts), Vec(n, 0.0),
                                   spec.bits);
    Candidate cand;
    cand.problem = model::make_problem(n, std::move(q), std::move(b), 0.0,
                                       std::vector<VarKind>(n, VarKind::Binary),
                                       Domain::PlusMinusOne);
    if (!spec.select) {
      cands[c] = std::move(cand);
      return;
    }

    const Vec base_min =
        canonical_spins(baselines::brute_force(cand.problem, 1.0).assignment);

    // Instances whose minimizer is just the rounded top eigenvector are too
    // easy for spectral-style dynamics; drop them.
    const std::vector<double> top =
        linalg::top_eigenvector(cand.problem.q.to_dense(), n);
    Vec pattern(n);
    for (std::size_t i = 0; i < n; ++i) pattern[i] = top[i] >= 0.0 ? 1.0 : -1.0;
    if (same_vector(base_min, canonical_spins(pattern))) {
      cand.rejected = true;
      cands[c] = std::move(cand);
      return;
    }

    // Sensitivity: how often 1-LSB weight noise moves the global minimizer.
    const double lsb = quantize_lsb(cand.problem.q, cand.problem.linear, spec.bits);
    std::size_t changed = 0;
    for (std::size_t trial = 0; trial < spec.sensitivity_trials; ++trial) {
      std::vector<Triplet> pts;
      cand.problem.q.for_each_upper([&](std::size_t i, std::size_t j, double v) {
        const double bump = static_cast<double>(
            static_cast<long long>(stream.next_below(3)) - 1);  // -1, 0, +1
        pts.push_back({i, j, v + bump * lsb});
      });
      QumoProblem noisy = model::make_problem(
          n, SymWeights::from_triplets(n, pts), Vec(n, 0.0), 0.0,
          std::vector<VarKind>(n, VarKind::Binary), Domain::PlusMinusOne);
      const Vec noisy_min = canonical_spins(baselines::brute_force(noisy, 1.0).assignment);
      if (!same_vector(noisy_min, base_min)) ++changed;
    }
    cand.sensitivity = spec.sensitivity_trials > 0
                           ? static_cast<double>(changed) /
                                 static_cast<double>(spec.sensitivity_trials)
                           : 0.0;
    cands[c] = std::move(cand);
  });

  if (!spec.select) {
    std::vector<QumoProblem> out;
    out.reserve(cands.size());
    for (auto& c : cands) out.push_back(std::move(c.problem));
    return out;
  }

  std::vector<std::size_t> order;
  for (std::size_t c = 0; c < cands.size(); ++c)
    if (!cands[c].rejected) order.push_back(c);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cands[a].sensitivity > cands[b].sensitivity;
  });

  std::vector<QumoProblem> out;
  for (std::size_t k = 0; k < order.size() && out.size() < spec.count; ++k)
    out.push_back(std::move(cands[order[k]].problem));
  if (out.size() < spec.count)
    throw Error("gen_qubo: not enough candidates survived rejection");
  return out;
}

namespace {

// Planted construction scratch: the continuous-continuous block is diagonal
// (-d_i), so for a fixed binary pattern the grid minimum separates per
// coordinate and verification is exact and cheap.
struct PlantedDraft {
  std::size_t nb = 0, nc = 0;
  std::vector<double> qd;  // dense, n x n
  Vec b;
  Vec planted;             // length n
  std::vector<std::size_t> bin_idx, cont_idx;
};

// Value of one binary pattern with every continuous coordinate minimized
// over its grid; exploits the diagonal continuous block (each coordinate is
// convex, so the grid minimum neighbors the clamped stationary point).
double pattern_value(const PlantedDraft& d, std::size_t mask) {
  const std::size_t n = d.nb + d.nc;
  // A(z) = -1/2 z' Qzz z - bz' z
  double total = 0.0;
  for (std::size_t a = 0; a < d.nb; ++a) {
    if (((mask >> a) & 1) == 0) continue;
    const std::size_t ia = d.bin_idx[a];
    total -= d.b[ia];
    total -= 0.5 * d.qd[ia * n + ia];
    for (std::size_t c = a + 1; c < d.nb; ++c)
      if ((mask >> c) & 1) total -= d.qd[ia * n + d.bin_idx[c]];
  }
  for (std::size_t ci = 0; ci < d.nc; ++ci) {
    const std::size_t ic = d.cont_idx[ci];
    const double di = -d.qd[ic * n + ic];
    double lin = d.b[ic];
    for (std::size_t a = 0; a < d.nb; ++a)
      if ((mask >> a) & 1) lin += d.qd[ic * n + d.bin_idx[a]];
    const double star = lin / di;
    const long long k0 = std::llround(std::floor(star * kGridSteps));
    double bestc = std::numeric_limits<double>::infinity();
    for (long long k = k0 - 1; k <= k0 + 2; ++k) {
      const long long kk = std::clamp<long long>(k, 0, kGridSteps);
      const double s = static_cast<double>(kk) / kGridSteps;
      bestc = std::min(bestc, 0.5 * di * s * s - lin * s);
    }
    total += bestc;
  }
  return total;
}

std::size_t best_pattern(const PlantedDraft& d) {
  std::size_t best = 0;
  double gmin = std::numeric_limits<double>::infinity();
  for (std::size_t mask = 0; mask < (std::size_t{1} << d.nb); ++mask) {
    const double v = pattern_value(d, mask);
    if (v < gmin) {
      gmin = v;
      best = mask;
    }
  }
  return best;
}

// Global minimum over {0,1}^nb x grid^nc. Returns (min value, whether the
// planted point attains it).
std::pair<double, bool> planted_grid_min(const PlantedDraft& d) {
  const std::size_t n = d.nb + d.nc;
  double gmin = std::numeric_limits<double>::infinity();
  for (std::size_t mask = 0; mask < (std::size_t{1} << d.nb); ++mask)
    gmin = std::min(gmin, pattern_value(d, mask));

  // Value at the planted point through the same arithmetic path.
  double fp = 0.0;
  for (std::size_t a = 0; a < d.nb; ++a) {
    const std::size_t ia = d.bin_idx[a];
    if (d.planted[ia] == 0.0) continue;
    fp -= d.b[ia];
    fp -= 0.5 * d.qd[ia * n + ia];
    for (std::size_t c = a + 1; c < d.nb; ++c)
      if (d.planted[d.bin_idx[c]] != 0.0) fp -= d.qd[ia * n + d.bin_idx[c]];
  }
  for (std::size_t ci = 0; ci < d.nc; ++ci) {
    const std::size_t ic = d.cont_idx[ci];
    const double di = -d.qd[ic * n + ic];
    double lin = d.b[ic];
    for (std::size_t a = 0; a < d.nb; ++a)
      if (d.planted[d.bin_idx[a]] != 0.0) lin += d.qd[ic * n + d.bin_idx[a]];
    const double s = d.planted[ic];
    fp += 0.5 * di * s * s - lin * s;
  }

  const bool attained = fp <= gmin + 1e-12 * std::max(1.0, std::abs(gmin));
  return {gmin, attained};
}

}  // namespace

PlantedBatch gen_planted_qumo(const GenSpec& spec) {
  if (spec.family != Family::PlantedQumo)
    throw InvalidArgument("gen_planted_qumo: wrong family");
  check_bits(spec.bits);
  const std::size_t n = spec.n;
  const std::size_t nc = spec.n_continuous;
  if (n < 2 || n > 16)
    throw InvalidArgument("gen_planted_qumo: n must lie in [2, 16]");
  if (nc > 3 || nc >= n)
    throw InvalidArgument("gen_planted_qumo: up to 3 continuous variables (< n)");
  const std::size_t nb = n - nc;

  PlantedBatch batch;
  const std::size_t max_draws = std::max<std::size_t>(spec.count * 200, 200);
  std::size_t draw = 0;
  while (batch.instances.size() < spec.count && draw < max_draws) {
    rng::Stream stream(rng::sample_key(spec.seed, 0x70000000ull + draw));
    ++draw;

    PlantedDraft d;
    d.nb = nb;
    d.nc = nc;
    // Continuous variables interleave at the tail; index bookkeeping keeps
    // them general.
    for (std::size_t i = 0; i < nb; ++i) d.bin_idx.push_back(i);
    for (std::size_t i = nb; i < n; ++i) d.cont_idx.push_back(i);

    d.qd.assign(n * n, 0.0);
    d.b.assign(n, 0.0);
    d.planted.assign(n, 0.0);

    for (std::size_t a = 0; a < nb; ++a)
      for (std::size_t c = a + 1; c < nb; ++c) {
        const double v = stream.next_gaussian();
        d.qd[a * n + c] = d.qd[c * n + a] = v;
      }
    for (std::size_t a = 0; a < nb; ++a)
      for (std::size_t ci = 0; ci < nc; ++ci) {
        const double v = 0.7 * stream.next_gaussian();
        d.qd[a * n + d.cont_idx[ci]] = d.qd[d.cont_idx[ci] * n + a] = v;
      }
    for (std::size_t ci = 0; ci < nc; ++ci) {
      const double di = stream.next_range(2.0, 4.0);
      d.qd[d.cont_idx[ci] * n + d.cont_idx[ci]] = -di;
    }
    for (std::size_t a = 0; a < nb; ++a) d.b[a] = 0.7 * stream.next_gaussian();

    // Target continuous values: random interior grid points. The binary
    // pattern is retargeted to the landscape's own minimizer so the
    // stationarity construction and the global argmin agree.
    Vec s_target(nc);
    for (std::size_t ci = 0; ci < nc; ++ci) {
      const std::size_t k = 16 + stream.next_below(97);  // [16, 112]
      s_target[ci] = static_cast<double>(k) / kGridSteps;
      d.planted[d.cont_idx[ci]] = s_target[ci];
    }
    std::size_t sigma = 0;
    for (std::size_t a = 0; a < nb; ++a)
      sigma |= (stream.next_u64() & 1) << a;
    bool stable = false;
    for (int retarget = 0; retarget < 5 && !stable; ++retarget) {
      for (std::size_t a = 0; a < nb; ++a)
        d.planted[a] = (sigma >> a) & 1 ? 1.0 : 0.0;
      for (std::size_t ci = 0; ci < nc; ++ci) {
        const std::size_t ic = d.cont_idx[ci];
        const double di = -d.qd[ic * n + ic];
        double dot = 0.0;
        for (std::size_t a = 0; a < nb; ++a)
          if (d.planted[a] != 0.0) dot += d.qd[ic * n + a];
        d.b[ic] = di * s_target[ci] - dot;
      }
      const std::size_t argmin = best_pattern(d);
      stable = argmin == sigma;
      sigma = argmin;
    }
    if (!stable) continue;

    // Quantize, then re-snap the planted continuous values to the grid
    // minimizer of the quantized problem.
    {
      auto [qq, bq] = quantize_weights(
          SymWeights::from_dense(n, d.qd), d.b, spec.bits);
      d.qd = qq.to_dense();
      d.b = std::move(bq);
    }
    bool degenerate = false;
    for (std::size_t ci = 0; ci < nc && !degenerate; ++ci) {
      const std::size_t ic = d.cont_idx[ci];
      const double di = -d.qd[ic * n + ic];
      if (!(di > 0.0)) {
        degenerate = true;
        break;
      }
      double lin = d.b[ic];
      for (std::size_t a = 0; a < nb; ++a)
        if (d.planted[a] != 0.0) lin += d.qd[ic * n + a];
      const long long k =
          std::clamp<long long>(std::llround(lin / di * kGridSteps), 0, kGridSteps);
      if (k < 1 || k > static_cast<long long>(kGridSteps) - 1) degenerate = true;
      d.planted[ic] = static_cast<double>(k) / kGridSteps;
    }
    if (degenerate) continue;

    if (!planted_grid_min(d).second) continue;

    // Obscure the construction: hundreds of 1-LSB pokes, each kept only if
    // the planted point stays globally optimal on the grid.
    const double lsb = quantize_lsb(SymWeights::from_dense(n, d.qd), d.b, spec.bits);
    std::size_t applied = 0;
    for (int round = 0; round < 300; ++round) {
      const double bump = (stream.next_u64() & 1) ? lsb : -lsb;
      const std::size_t what = stream.next_below(3);
      std::size_t i = 0, j = 0;
      double *slot_a = nullptr, *slot_b = nullptr;
      if (what == 0 && nb >= 2) {  // binary-binary coupling
        i = stream.next_below(nb);
        j = stream.next_below(nb);
        if (i == j) continue;
        slot_a = &d.qd[d.bin_idx[i] * n + d.bin_idx[j]];
        slot_b = &d.qd[d.bin_idx[j] * n + d.bin_idx[i]];
      } else if (what == 1 && nc > 0) {  // binary-continuous coupling
        i = stream.next_below(nb);
        j = stream.next_below(nc);
        slot_a = &d.qd[d.bin_idx[i] * n + d.cont_idx[j]];
        slot_b = &d.qd[d.cont_idx[j] * n + d.bin_idx[i]];
      } else {  // linear term
        i = stream.next_below(n);
        slot_a = &d.b[i];
      }
      const double old_a = *slot_a;
      const double old_b = slot_b ? *slot_b : 0.0;
      *slot_a += bump;
      if (slot_b) *slot_b += bump;
      if (planted_grid_min(d).second) {
        ++applied;
      } else {
        *slot_a = old_a;
        if (slot_b) *slot_b = old_b;
      }
    }

    QumoProblem prob = model::make_dense_problem(
        n, d.qd, d.b, 0.0,
        [&] {
          std::vector<VarKind> ks(n, VarKind::Binary);
          for (std::size_t ic : d.cont_idx) ks[ic] = VarKind::Continuous;
          return ks;
        }(),
        Domain::ZeroOne);

    // Independent certification through the exhaustive oracle.
    const auto bf = baselines::brute_force(prob, 1.0 / kGridSteps);
    const double fp = model::objective(prob, d.planted);
    if (std::abs(fp - bf.objective) > 1e-9 * std::max(1.0, std::abs(bf.objective)))
      continue;

    batch.instances.push_back({std::move(prob), d.planted, applied});
  }
  batch.budget_exhausted = batch.instances.size() < spec.count;
  return batch;
}

transforms::ConstrainedProblem gen_settlement_like(const GenSpec& spec) {
  if (spec.family != Family::SettlementLike)
    throw InvalidArgument("gen_settlement_like: wrong family");
  const std::size_t parties = spec.parties;
  const std::size_t m = spec.transactions;
  if (parties < 2) throw InvalidArgument("gen_settlement_like: need >= 2 parties");
  if (m < 1) throw InvalidArgument("gen_settlement_like: need >= 1 transaction");

  rng::Stream stream(rng::sample_key(spec.seed, 0x5e771e));

  struct Tx {
    std::size_t from, to;
    double amount;
  };

  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Tx> txs;
    if (spec.chain_topology) {
      // Obligation chain 0 -> 1 -> ... with equal amounts.
      for (std::size_t i = 0; i < m; ++i)
        txs.push_back({i % parties, (i + 1) % parties, 2.0});
    } else if (parties == m) {
      // A cycle touches every party with one in and one out.
      for (std::size_t i = 0; i < m; ++i)
        txs.push_back({i, (i + 1) % parties,
                       static_cast<double>(1 + stream.next_below(4))});
    } else {
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t from = stream.next_below(parties);
        std::size_t to = stream.next_below(parties - 1);
        if (to >= from) ++to;
        txs.push_back({from, to, static_cast<double>(1 + stream.next_below(4))});
      }
    }

    std::vector<char> touched(parties, 0);
    for (const auto& t : txs) touched[t.from] = touched[t.to] = 1;
    if (!std::all_of(touched.begin(), touched.end(), [](char c) { return c != 0; }))
      continue;  // regenerate: every party must own a constraint

    // Objective: maximize settled weight, i.e. b = amounts in Eq-form.
    Vec weights(m);
    for (std::size_t i = 0; i < m; ++i) weights[i] = txs[i].amount;
    QumoProblem base = model::make_problem(
        m, SymWeights::from_triplets(m, {}), weights, 0.0,
        std::vector<VarKind>(m, VarKind::Binary), Domain::ZeroOne);

    transforms::ConstrainedProblem cp;
    cp.base = std::move(base);
    for (std::size_t pj = 0; pj < parties; ++pj) {
      transforms::LinearConstraint c;
      double incoming = 0.0, outgoing = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        if (txs[i].to == pj) {
          c.coeffs.emplace_back(i, txs[i].amount);
          incoming += txs[i].amount;
        } else if (txs[i].from == pj) {
          c.coeffs.emplace_back(i, -txs[i].amount);
          outgoing += txs[i].amount;
        }
      }
      double funds;  // balance + credit available to cover net outflow
      if (spec.chain_topology) {
        funds = 0.0;
      } else {
        funds = outgoing > 0.0
                    ? std::floor(outgoing * stream.next_range(0.3, 0.9))
                    : 0.0;
      }
      c.lo = -funds;
      // Width padded up to a power of two, so the optimal slack value
      // (u - a.x) / (u - l) always lands on the 1/128 grid.
      double width = incoming - c.lo;
      double padded = 1.0;
      while (padded < width) padded *= 2.0;
      if (width == 0.0) padded = 0.0;  // nothing can move: equality
      c.hi = c.lo + padded;
      cp.constraints.push_back(std::move(c));
    }
    return cp;
  }
  throw Error("gen_settlement_like: could not draw a connected instance");
}

}  // namespace qumo::gen
