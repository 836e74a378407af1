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

#include "qumo/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qumo/error.hpp"

namespace qumo::transforms {

double LinearConstraint::value_at(const Vec& x) const {
  double s = 0.0;
  for (const auto& [idx, c] : coeffs) s += c * x[idx];
  return s;
}

namespace {

bool finite(double v) { return std::isfinite(v); }

// Attainable range of a.x over the variable box.
std::pair<double, double> coeff_range(const LinearConstraint& c, double box_lo,
                                      double box_hi) {
  double lo = 0.0, hi = 0.0;
  for (const auto& [idx, coef] : c.coeffs) {
    (void)idx;
    lo += std::min(coef * box_lo, coef * box_hi);
    hi += std::max(coef * box_lo, coef * box_hi);
  }
  return {lo, hi};
}

}  // namespace

PenaltyResult constraints_to_qumo(const ConstrainedProblem& cp,
                                  const PenaltyConfig& pc) {
  const QumoProblem& base = cp.base;
  const std::size_t n = base.n;
  const double box_lo = base.box_lo();
  const double box_hi = base.box_hi();
  const double box_span = box_hi - box_lo;

  if (pc.mode == PenaltyConfig::Mode::Fixed && !(pc.p0 > 0.0))
    throw InvalidArgument("constraints_to_qumo: fixed P0 must be > 0");

  // Base weight: twice the attainable objective magnitude, so that a unit
  // (width-relative) violation always costs more than any objective gain.
  double p0_base = base.q.abs_sum() / 2.0;
  for (double b : base.linear) p0_base += std::abs(b);
  p0_base *= 2.0;
  if (p0_base == 0.0) p0_base = 1.0;

  // Validate constraints and complete one-sided bounds.
  struct Prepared {
    const LinearConstraint* c;
    double lo, hi;
    bool equality;
  };
  std::vector<Prepared> prepared;
  prepared.reserve(cp.constraints.size());
  std::size_t slack_count = 0;
  for (std::size_t ci = 0; ci < cp.constraints.size(); ++ci) {
    const LinearConstraint& c = cp.constraints[ci];
    if (!finite(c.lo) && !finite(c.hi))
      throw InvalidArgument("constraints_to_qumo: both bounds infinite");
    if (c.lo > c.hi) throw InvalidArgument("constraints_to_qumo: lo exceeds hi");
    for (const auto& [idx, coef] : c.coeffs) {
      if (idx >= n)
        throw InvalidArgument("constraints_to_qumo: variable index out of range");
      if (!finite(coef))
        throw InvalidArgument("constraints_to_qumo: non-finite coefficient");
    }
    const auto [amin, amax] = coeff_range(c, box_lo, box_hi);
    double lo = c.lo, hi = c.hi;
    if (!finite(lo)) lo = amin;
    if (!finite(hi)) hi = amax;
    if (lo > hi)
      throw InvalidArgument(
          "constraints_to_qumo: constraint infeasible over the variable box");
    const bool eq = lo == hi;
    if (!eq) ++slack_count;
    prepared.push_back({&c, lo, hi, eq});
  }

  const std::size_t n_out = n + slack_count;
  std::vector<double> q_out(n_out * n_out, 0.0);
  base.q.for_each_upper([&](std::size_t i, std::size_t j, double v) {
    q_out[i * n_out + j] = v;
    q_out[j * n_out + i] = v;
  });
  Vec b_out(n_out, 0.0);
  std::copy(base.linear.begin(), base.linear.end(), b_out.begin());
  double c_out = base.offset;
  std::vector<VarKind> kinds = base.kinds;
  kinds.resize(n_out, VarKind::Continuous);

  SlackMap smap;
  smap.original_n = n;
  smap.entries.resize(cp.constraints.size());

  std::size_t next_slack = n;
  for (std::size_t ci = 0; ci < prepared.size(); ++ci) {
    const Prepared& pr = prepared[ci];
    const double width = pr.hi - pr.lo;

    double penalty = pc.p0;
    if (pc.mode == PenaltyConfig::Mode::Auto) {
      // Width-relative scaling, floored so a unit violation is never cheap.
      const double scale =
          (!pr.equality && width > 0.0) ? std::max(1.0, 1.0 / (width * width)) : 1.0;
      penalty = p0_base * scale;
    }

    // Residual r = a.x + w_s * s + r0, zero exactly when the constraint holds
    // with the right slack value.
    std::vector<std::pair<std::size_t, double>> terms(pr.c->coeffs);
    double r0 = -pr.hi;
    if (!pr.equality) {
      // Slack spans [box_lo, box_hi]; normalize it to [0,1] inside the term.
      const double ws = width / box_span;
      terms.emplace_back(next_slack, ws);
      r0 -= ws * box_lo;
      smap.entries[ci].slack_index = next_slack;
      ++next_slack;
    }
    smap.entries[ci].lo = pr.lo;
    smap.entries[ci].hi = pr.hi;
    smap.entries[ci].penalty = penalty;

    // F += P (v.x + r0)^2, i.e. Q -= 2P v v^T, b -= 2P r0 v, c0 += P r0^2.
    for (const auto& [k, vk] : terms) {
      for (const auto& [l, vl] : terms) {
        q_out[k * n_out + l] -= 2.0 * penalty * vk * vl;
      }
      b_out[k] -= 2.0 * penalty * r0 * vk;
    }
    c_out += penalty * r0 * r0;
  }

  PenaltyResult out;
  out.problem = model::make_dense_problem(n_out, std::move(q_out), std::move(b_out),
                                          c_out, std::move(kinds), base.domain);
  out.map = std::move(smap);
  return out;
}

bool feasible(const ConstrainedProblem& cp, const Vec& x) {
  for (const auto& c : cp.constraints) {
    const double v = c.value_at(x);
    if (v < c.lo || v > c.hi) return false;
  }
  return true;
}

Vec EncodingMap::decode(const Vec& encoded) const {
  Vec out(original_n, 0.0);
  for (const auto& [src, oi] : binary) out[src] = encoded[oi];
  for (const auto& e : continuous) {
    double s = 0.0;
    for (const auto& [oi, w] : e.bits) s += w * encoded[oi];
    out[e.source] = s;
  }
  return out;
}

EncodedQubo slack_to_qubo(const QumoProblem& p, SlackEncoding encoding,
                          unsigned n_bits) {
  if (n_bits < 1) throw InvalidArgument("slack_to_qubo: n_bits must be >= 1");
  if (n_bits > 16)
    throw ResourceLimit("slack_to_qubo: encodings beyond 16 bits are not supported");
  if (p.count_continuous() == 0)
    throw InvalidArgument("slack_to_qubo: problem has no continuous variables");

  // Bit weights are normalized so the encoded value spans the variable box
  // exactly; the same weights work in both domains.
  std::vector<double> weights;
  if (encoding == SlackEncoding::Unary) {
    const std::size_t m = std::size_t{1} << n_bits;
    weights.assign(m, 1.0 / static_cast<double>(m));
  } else {
    const double denom = static_cast<double>((std::size_t{1} << n_bits) - 1);
    for (unsigned k = 0; k < n_bits; ++k)
      weights.push_back(static_cast<double>(std::size_t{1} << k) / denom);
  }

  // Output layout: variables in original order, continuous ones replaced by
  // their bit blocks in place.
  EncodingMap map;
  map.original_n = p.n;
  std::vector<std::vector<std::pair<std::size_t, double>>> expand(p.n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < p.n; ++i) {
    if (p.kinds[i] == VarKind::Binary) {
      expand[i] = {{next, 1.0}};
      map.binary.emplace_back(i, next);
      ++next;
    } else {
      EncodingMap::Entry e;
      e.source = i;
      for (double w : weights) {
        expand[i].emplace_back(next, w);
        e.bits.emplace_back(next, w);
        ++next;
      }
      map.continuous.push_back(std::move(e));
    }
  }
  const std::size_t n_out = next;

  // Pull the quadratic form through x = E y (no offset, see weights above).
  // Bit blocks are disjoint, so each output entry receives exactly one
  // contribution and the result is symmetric by construction.
  std::vector<double> q_out(n_out * n_out, 0.0);
  p.q.for_each_upper([&](std::size_t i, std::size_t j, double v) {
    for (const auto& [oi, wi] : expand[i]) {
      for (const auto& [oj, wj] : expand[j]) {
        q_out[oi * n_out + oj] += v * wi * wj;
        if (i != j) q_out[oj * n_out + oi] += v * wi * wj;
      }
    }
  });

  Vec b_out(n_out, 0.0);
  for (std::size_t i = 0; i < p.n; ++i)
    for (const auto& [oi, wi] : expand[i]) b_out[oi] += p.linear[i] * wi;

  EncodedQubo out;
  out.problem = model::make_dense_problem(
      n_out, std::move(q_out), std::move(b_out), p.offset,
      std::vector<VarKind>(n_out, VarKind::Binary), p.domain);
  out.map = std::move(map);
  return out;
}

QumoProblem qubo_ising_roundtrip(const QumoProblem& p) {
  if (!p.all_binary())
    throw InvalidArgument(
        "qubo_ising_roundtrip: mixed problems need domain_shift instead");

  const Vec qe = p.q.row_sums();
  double ee = 0.0, be = 0.0;
  for (std::size_t i = 0; i < p.n; ++i) {
    ee += qe[i];
    be += p.linear[i];
  }

  QumoProblem out;
  out.n = p.n;
  out.kinds = p.kinds;
  out.linear.resize(p.n);
  if (p.domain == Domain::PlusMinusOne) {
    // Ising (B, b) -> QUBO: A = 4B, a = 2b - 2Be, with the constant shifted
    // so values agree at corresponding assignments.
    out.domain = Domain::ZeroOne;
    out.q = p.q.scaled(4.0);
    for (std::size_t i = 0; i < p.n; ++i)
      out.linear[i] = 2.0 * p.linear[i] - 2.0 * qe[i];
    out.offset = p.offset + be - 0.5 * ee;
  } else {
    // QUBO (A, a) -> Ising: B = A/4, b = a/2 + Ae/4.
    out.domain = Domain::PlusMinusOne;
    out.q = p.q.scaled(0.25);
    for (std::size_t i = 0; i < p.n; ++i)
      out.linear[i] = 0.5 * p.linear[i] + 0.25 * qe[i];
    out.offset = p.offset - ee / 8.0 - be / 2.0;
  }
  return out;
}

QumoProblem maxcut_to_ising(const std::vector<WeightedEdge>& edges,
                            std::size_t n) {
  std::vector<Triplet> ts;
  ts.reserve(edges.size());
  double total = 0.0;
  for (const auto& e : edges) {
    if (e.u == e.v) throw InvalidArgument("maxcut_to_ising: self-loop");
    if (e.u >= n || e.v >= n)
      throw InvalidArgument("maxcut_to_ising: vertex index out of range");
    ts.push_back({e.u, e.v, -0.5 * e.weight});
    total += e.weight;
  }
  // With Q = -C/2 and c0 = -W/2 the objective satisfies -F(y) == cut(y).
  return model::make_problem(n, SymWeights::from_triplets(n, ts), Vec(n, 0.0),
                             -0.5 * total,
                             std::vector<VarKind>(n, VarKind::Binary),
                             Domain::PlusMinusOne);
}

double cut_value(const std::vector<WeightedEdge>& edges, const Vec& spins) {
  double cut = 0.0;
  for (const auto& e : edges)
    cut += e.weight * (1.0 - spins[e.u] * spins[e.v]) / 2.0;
  return cut;
}

std::vector<FixedSubproblem> greedy_fix_preprocess(const QumoProblem& p,
                                                   std::size_t k) {
  if (k > 20) throw ResourceLimit("greedy_fix_preprocess: k > 20");
  if (k > p.count_binary())
    throw InvalidArgument("greedy_fix_preprocess: k exceeds binary variable count");

  if (k == 0) {
    FixedSubproblem whole;
    whole.reduced = p;
    whole.kept_indices.resize(p.n);
    std::iota(whole.kept_indices.begin(), whole.kept_indices.end(), std::size_t{0});
    return {whole};
  }

  // Impact score: an upper bound on how much a variable can move the
  // objective between its endpoints.
  const std::vector<double> qd = p.q.to_dense();
  std::vector<double> impact(p.n, -1.0);
  for (std::size_t i = 0; i < p.n; ++i) {
    if (p.kinds[i] != VarKind::Binary) continue;
    double row = 0.0;
    for (std::size_t j = 0; j < p.n; ++j) row += std::abs(qd[i * p.n + j]);
    impact[i] = std::abs(p.linear[i]) + 0.5 * row;
  }
  std::vector<std::size_t> order(p.n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return impact[a] > impact[b];
  });
  std::vector<std::size_t> fixed(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(fixed.begin(), fixed.end());

  std::vector<std::size_t> kept;
  std::vector<char> is_fixed(p.n, 0);
  for (std::size_t f : fixed) is_fixed[f] = 1;
  for (std::size_t i = 0; i < p.n; ++i)
    if (!is_fixed[i]) kept.push_back(i);
  const std::size_t m = kept.size();

  // The reduced quadratic block is shared by all 2^k subproblems.
  std::vector<double> q_rr(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      q_rr[a * m + b] = qd[kept[a] * p.n + kept[b]];
  std::vector<VarKind> kept_kinds;
  kept_kinds.reserve(m);
  for (std::size_t idx : kept) kept_kinds.push_back(p.kinds[idx]);

  const double lo = p.box_lo();
  const double hi = p.box_hi();

  std::vector<FixedSubproblem> out;
  out.reserve(std::size_t{1} << k);
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Vec v(k);
    for (std::size_t j = 0; j < k; ++j) v[j] = (mask >> j) & 1 ? hi : lo;

    Vec b_r(m);
    for (std::size_t a = 0; a < m; ++a) {
      double acc = p.linear[kept[a]];
      for (std::size_t j = 0; j < k; ++j)
        acc += qd[kept[a] * p.n + fixed[j]] * v[j];
      b_r[a] = acc;
    }
    double c_r = p.offset;
    for (std::size_t j = 0; j < k; ++j) {
      c_r -= p.linear[fixed[j]] * v[j];
      c_r -= 0.5 * qd[fixed[j] * p.n + fixed[j]] * v[j] * v[j];
      for (std::size_t l = j + 1; l < k; ++l)
        c_r -= qd[fixed[j] * p.n + fixed[l]] * v[j] * v[l];
    }

    FixedSubproblem sub;
    sub.reduced = model::make_dense_problem(m, q_rr, std::move(b_r), c_r,
                                            kept_kinds, p.domain);
    sub.fixed_indices = fixed;
    sub.fixed_values = std::move(v);
    sub.kept_indices = kept;
    out.push_back(std::move(sub));
  }
  return out;
}

Vec merge_fixed(const FixedSubproblem& sub, const Vec& reduced_solution) {
  if (reduced_solution.size() != sub.kept_indices.size())
    throw InvalidArgument("merge_fixed: reduced solution length mismatch");
  Vec full(sub.kept_indices.size() + sub.fixed_indices.size());
  for (std::size_t a = 0; a < sub.kept_indices.size(); ++a)
    full[sub.kept_indices[a]] = reduced_solution[a];
  for (std::size_t j = 0; j < sub.fixed_indices.size(); ++j)
    full[sub.fixed_indices[j]] = sub.fixed_values[j];
  return full;
}

}  // namespace qumo::transforms
