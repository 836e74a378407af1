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

#include "qumo/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qumo/error.hpp"
#include "qumo/kernels.hpp"

namespace qumo {

namespace {
constexpr std::size_t kDenseLimit = 4096;
constexpr double kSparseDensity = 0.05;
}  // namespace

SymWeights SymWeights::from_dense(std::size_t n, std::vector<double> values) {
  if (values.size() != n * n)
    throw InvalidArgument("SymWeights: dense size must be n*n");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (values[i * n + j] != values[j * n + i])
        throw InvalidArgument("SymWeights: matrix is not symmetric");
  SymWeights w;
  w.n_ = n;
  w.dense_ = true;
  w.d_ = std::move(values);
  return w;
}

SymWeights SymWeights::from_triplets(std::size_t n, const std::vector<Triplet>& ts) {
  // Accumulate on the upper triangle; (i,j) and (j,i) hit the same slot.
  std::map<std::pair<std::size_t, std::size_t>, double> acc;
  for (const auto& t : ts) {
    if (t.i >= n || t.j >= n)
      throw InvalidArgument("SymWeights: triplet index out of range");
    const auto key = std::minmax(t.i, t.j);
    acc[{key.first, key.second}] += t.value;
  }

  SymWeights w;
  w.n_ = n;
  const std::size_t nnz_sym = acc.size();
  const double density =
      n == 0 ? 1.0 : static_cast<double>(2 * nnz_sym) / (static_cast<double>(n) * n);
  if (n <= kDenseLimit || density >= kSparseDensity) {
    w.dense_ = true;
    w.d_.assign(n * n, 0.0);
    for (const auto& [ij, v] : acc) {
      w.d_[ij.first * n + ij.second] = v;
      w.d_[ij.second * n + ij.first] = v;
    }
    return w;
  }

  // CSR over the full (symmetrized) pattern for cheap row-wise apply.
  w.dense_ = false;
  std::vector<std::size_t> counts(n, 0);
  for (const auto& [ij, v] : acc) {
    (void)v;
    ++counts[ij.first];
    if (ij.first != ij.second) ++counts[ij.second];
  }
  w.rp_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) w.rp_[i + 1] = w.rp_[i] + counts[i];
  w.ci_.resize(w.rp_[n]);
  w.cv_.resize(w.rp_[n]);
  std::vector<std::size_t> cursor(w.rp_.begin(), w.rp_.end() - 1);
  for (const auto& [ij, v] : acc) {
    w.ci_[cursor[ij.first]] = ij.second;
    w.cv_[cursor[ij.first]++] = v;
    if (ij.first != ij.second) {
      w.ci_[cursor[ij.second]] = ij.first;
      w.cv_[cursor[ij.second]++] = v;
    }
  }
  // Upper-part entries land in order (std::map iteration); the mirrored
  // lower entries do not, so sort each row.
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<std::size_t, double>> row;
    row.reserve(w.rp_[i + 1] - w.rp_[i]);
    for (std::size_t k = w.rp_[i]; k < w.rp_[i + 1]; ++k)
      row.emplace_back(w.ci_[k], w.cv_[k]);
    std::sort(row.begin(), row.end());
    for (std::size_t k = w.rp_[i]; k < w.rp_[i + 1]; ++k) {
      w.ci_[k] = row[k - w.rp_[i]].first;
      w.cv_[k] = row[k - w.rp_[i]].second;
    }
  }
  return w;
}

std::size_t SymWeights::nonzeros() const {
  if (!dense_) return cv_.size();
  std::size_t c = 0;
  for (double v : d_)
    if (v != 0.0) ++c;
  return c;
}

double SymWeights::at(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw InvalidArgument("SymWeights::at: index out of range");
  if (dense_) return d_[i * n_ + j];
  const auto begin = ci_.begin() + static_cast<std::ptrdiff_t>(rp_[i]);
  const auto end = ci_.begin() + static_cast<std::ptrdiff_t>(rp_[i + 1]);
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return 0.0;
  return cv_[static_cast<std::size_t>(it - ci_.begin())];
}

void SymWeights::apply(const double* x, double* out) const {
  if (dense_) {
    kernels::matvec(d_.data(), x, out, n_);
    return;
  }
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t k = rp_[i]; k < rp_[i + 1]; ++k) acc += cv_[k] * x[ci_[k]];
    out[i] = acc;
  }
}

void SymWeights::apply_b8(const double* x, double* out) const {
  if (dense_) {
    kernels::matvec_b8(d_.data(), x, out, n_);
    return;
  }
  constexpr std::size_t B = kernels::kBlock;
  for (std::size_t i = 0; i < n_; ++i) {
    double acc[B] = {0, 0, 0, 0, 0, 0, 0, 0};
    for (std::size_t k = rp_[i]; k < rp_[i + 1]; ++k) {
      const double v = cv_[k];
      const double* xj = x + ci_[k] * B;
      for (std::size_t c = 0; c < B; ++c) acc[c] += v * xj[c];
    }
    for (std::size_t c = 0; c < B; ++c) out[i * B + c] = acc[c];
  }
}

double SymWeights::quad_form(const double* x) const {
  std::vector<double> tmp(n_);
  apply(x, tmp.data());
  return kernels::dot(x, tmp.data(), n_);
}

std::vector<double> SymWeights::row_sums() const {
  std::vector<double> ones(n_, 1.0), out(n_, 0.0);
  if (n_ > 0) apply(ones.data(), out.data());
  return out;
}

double SymWeights::max_abs() const {
  double m = 0.0;
  if (dense_) {
    for (double v : d_) m = std::max(m, std::abs(v));
  } else {
    for (double v : cv_) m = std::max(m, std::abs(v));
  }
  return m;
}

double SymWeights::abs_sum() const {
  double s = 0.0;
  if (dense_) {
    for (double v : d_) s += std::abs(v);
  } else {
    for (double v : cv_) s += std::abs(v);
  }
  return s;
}

bool SymWeights::is_zero() const { return max_abs() == 0.0; }

void SymWeights::for_each_upper(
    const std::function<void(std::size_t, std::size_t, double)>& fn) const {
  if (dense_) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j)
        if (d_[i * n_ + j] != 0.0) fn(i, j, d_[i * n_ + j]);
    return;
  }
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = rp_[i]; k < rp_[i + 1]; ++k)
      if (ci_[k] >= i) fn(i, ci_[k], cv_[k]);
}

SymWeights SymWeights::scaled(double factor) const {
  SymWeights w = *this;
  if (dense_) {
    for (double& v : w.d_) v *= factor;
  } else {
    for (double& v : w.cv_) v *= factor;
  }
  return w;
}

std::vector<double> SymWeights::to_dense() const {
  if (dense_) return d_;
  std::vector<double> out(n_ * n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = rp_[i]; k < rp_[i + 1]; ++k) out[i * n_ + ci_[k]] = cv_[k];
  return out;
}

const std::vector<double>& SymWeights::dense_values() const {
  if (!dense_) throw InvalidArgument("SymWeights: matrix is stored sparse");
  return d_;
}

std::size_t QumoProblem::count_binary() const {
  std::size_t c = 0;
  for (VarKind k : kinds)
    if (k == VarKind::Binary) ++c;
  return c;
}

namespace model {

QumoProblem make_problem(std::size_t n, SymWeights q, Vec linear, double offset,
                         std::vector<VarKind> kinds, Domain domain) {
  if (q.size() != n) throw InvalidArgument("make_problem: Q size mismatch");
  if (linear.size() != n) throw InvalidArgument("make_problem: b length mismatch");
  if (kinds.size() != n) throw InvalidArgument("make_problem: kinds length mismatch");
  QumoProblem p;
  p.n = n;
  p.q = std::move(q);
  p.linear = std::move(linear);
  p.offset = offset;
  p.kinds = std::move(kinds);
  p.domain = domain;
  return p;
}

QumoProblem make_dense_problem(std::size_t n, std::vector<double> q_dense,
                               Vec linear, double offset,
                               std::vector<VarKind> kinds, Domain domain) {
  return make_problem(n, SymWeights::from_dense(n, std::move(q_dense)),
                      std::move(linear), offset, std::move(kinds), domain);
}

double objective(const QumoProblem& p, const Vec& x) {
  if (x.size() != p.n) throw InvalidArgument("objective: assignment length mismatch");
  if (p.n == 0) return p.offset;
  const double quad = p.q.quad_form(x.data());
  const double lin = kernels::dot(p.linear.data(), x.data(), p.n);
  return -0.5 * quad - lin + p.offset;
}

Vec gradient(const QumoProblem& p, const Vec& y) {
  if (y.size() != p.n) throw InvalidArgument("gradient: vector length mismatch");
  Vec out(p.n, 0.0);
  if (p.n == 0) return out;
  p.q.apply(y.data(), out.data());
  for (std::size_t i = 0; i < p.n; ++i) out[i] = -out[i] - p.linear[i];
  return out;
}

QumoProblem domain_shift(const QumoProblem& p, Domain target) {
  if (p.domain == target)
    throw InvalidArgument("domain_shift: problem is already in the target domain");

  const Vec qe = p.q.row_sums();
  double ee = 0.0, be = 0.0;
  for (std::size_t i = 0; i < p.n; ++i) {
    ee += qe[i];
    be += p.linear[i];
  }

  QumoProblem out;
  out.n = p.n;
  out.kinds = p.kinds;
  out.domain = target;
  out.linear.resize(p.n);
  if (target == Domain::PlusMinusOne) {
    // x = (y + 1) / 2
    out.q = p.q.scaled(0.25);
    for (std::size_t i = 0; i < p.n; ++i)
      out.linear[i] = 0.5 * p.linear[i] + 0.25 * qe[i];
    out.offset = p.offset - ee / 8.0 - be / 2.0;
  } else {
    // y = 2x - 1
    out.q = p.q.scaled(4.0);
    for (std::size_t i = 0; i < p.n; ++i)
      out.linear[i] = 2.0 * p.linear[i] - 2.0 * qe[i];
    out.offset = p.offset + be - ee / 2.0;
  }
  return out;
}

Vec map_point(const QumoProblem& p, Domain target, const Vec& x) {
  if (x.size() != p.n) throw InvalidArgument("map_point: vector length mismatch");
  Vec out(p.n);
  if (p.domain == target) return x;
  if (target == Domain::PlusMinusOne) {
    for (std::size_t i = 0; i < p.n; ++i) out[i] = 2.0 * x[i] - 1.0;
  } else {
    for (std::size_t i = 0; i < p.n; ++i) out[i] = (x[i] + 1.0) / 2.0;
  }
  return out;
}

Vec project(const QumoProblem& p, const Vec& raw) {
  if (raw.size() != p.n) throw InvalidArgument("project: vector length mismatch");
  const double lo = p.box_lo();
  const double hi = p.box_hi();
  const double mid = 0.5 * (lo + hi);
  Vec out(p.n);
  for (std::size_t i = 0; i < p.n; ++i) {
    if (p.kinds[i] == VarKind::Binary) {
      out[i] = raw[i] >= mid ? hi : lo;  // tie at the midpoint goes up
    } else {
      out[i] = std::min(hi, std::max(lo, raw[i]));
    }
  }
  return out;
}

bool in_box(const QumoProblem& p, const Vec& x, double eps) {
  if (x.size() != p.n) return false;
  const double lo = p.box_lo();
  const double hi = p.box_hi();
  for (std::size_t i = 0; i < p.n; ++i) {
    if (p.kinds[i] == VarKind::Binary) {
      if (std::abs(x[i] - lo) > eps && std::abs(x[i] - hi) > eps) return false;
    } else if (x[i] < lo - eps || x[i] > hi + eps) {
      return false;
    }
  }
  return true;
}

}  // namespace model
}  // namespace qumo
