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

#pragma once

// Canonical problem representation: minimize
//
//   F(x) = -1/2 x^T Q x - b^T x + c0
//
// over variables that are binary (box endpoints) or continuous (anywhere in
// the box). Problems live in one of two boxes: ZeroOne ({0,1} / [0,1]) for
// user-facing formulations, PlusMinusOne ({-1,1} / [-1,1]) for the solver
// engine. domain_shift converts exactly between the two.
//
// QumoProblem is immutable after construction and safe to share across
// threads; every operation here is a pure function.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace qumo {

enum class VarKind : std::uint8_t { Binary, Continuous };
enum class Domain : std::uint8_t { ZeroOne, PlusMinusOne };

/// A candidate or solution vector; binary entries sit at box endpoints.
using Vec = std::vector<double>;

struct Triplet {
  std::size_t i;
  std::size_t j;
  double value;
};

/// Symmetric weight matrix. Dense row-major for n <= 4096; a CSR form is
/// chosen automatically above that when density is below 5% (large sparse
/// max-cut instances). Both forms answer the same queries.
class SymWeights {
 public:
  SymWeights() = default;

  /// Dense input must be exactly symmetric (bit-for-bit).
  static SymWeights from_dense(std::size_t n, std::vector<double> values);

  /// Triplets may come in any order; (i,j) and (j,i) address the same entry
  /// and duplicates are summed.
  static SymWeights from_triplets(std::size_t n, const std::vector<Triplet>& ts);

  std::size_t size() const { return n_; }
  bool is_dense() const { return dense_; }
  std::size_t nonzeros() const;

  double at(std::size_t i, std::size_t j) const;

  /// out = Q x
  void apply(const double* x, double* out) const;
  /// out = Q X for an n x 8 row-major sample block
  void apply_b8(const double* x, double* out) const;
  /// x^T Q x
  double quad_form(const double* x) const;

  std::vector<double> row_sums() const;  // Q e
  double max_abs() const;
  double abs_sum() const;
  bool is_zero() const;

  /// Visits each stored entry of the upper triangle (i <= j) once.
  void for_each_upper(const std::function<void(std::size_t, std::size_t, double)>& fn) const;

  /// Entrywise scaling (preserves structure).
  SymWeights scaled(double factor) const;

  /// Dense copy (row-major); materializes CSR if needed.
  std::vector<double> to_dense() const;

  const std::vector<double>& dense_values() const;

 private:
  std::size_t n_ = 0;
  bool dense_ = true;
  std::vector<double> d_;          // dense storage
  std::vector<std::size_t> rp_;    // CSR row pointers (n+1)
  std::vector<std::size_t> ci_;    // CSR column indices
  std::vector<double> cv_;         // CSR values
};

struct QumoProblem {
  std::size_t n = 0;
  SymWeights q;
  Vec linear;      // b
  double offset = 0.0;  // c0, carried so transforms preserve values exactly
  std::vector<VarKind> kinds;
  Domain domain = Domain::ZeroOne;

  double box_lo() const { return domain == Domain::ZeroOne ? 0.0 : -1.0; }
  double box_hi() const { return 1.0; }

  std::size_t count_binary() const;
  std::size_t count_continuous() const { return n - count_binary(); }
  bool all_binary() const { return count_binary() == n; }
};

namespace model {

/// Validating constructor; throws InvalidArgument on any size mismatch.
QumoProblem make_problem(std::size_t n, SymWeights q, Vec linear, double offset,
                         std::vector<VarKind> kinds, Domain domain);

QumoProblem make_dense_problem(std::size_t n, std::vector<double> q_dense,
                               Vec linear, double offset,
                               std::vector<VarKind> kinds, Domain domain);

/// F(x) = -1/2 x^T Q x - b^T x + c0. No nonlinearity is applied: values on
/// projected solutions are exact.
double objective(const QumoProblem& p, const Vec& x);

/// grad F(y) = -Q y - b. Callers negate/scale as their update rule needs.
Vec gradient(const QumoProblem& p, const Vec& y);

/// Exact affine re-expression of the problem in the other box. Objective
/// values agree on corresponding points; binary endpoints map to endpoints.
QumoProblem domain_shift(const QumoProblem& p, Domain target);

/// The affine map itself: the point in `target` coordinates corresponding
/// to x in p.domain coordinates.
Vec map_point(const QumoProblem& p, Domain target, const Vec& x);

/// Readout: binary entries snap to the nearest box endpoint (ties to the
/// upper endpoint), continuous entries clip to the box.
Vec project(const QumoProblem& p, const Vec& raw);

/// True when every entry is inside the box (binary at endpoints), within eps.
bool in_box(const QumoProblem& p, const Vec& x, double eps = 0.0);

}  // namespace model
}  // namespace qumo
