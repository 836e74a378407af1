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

// Instance generators: 7-bit dense (Sherrington-Kirkpatrick) and sparse
// (three-regular) spin problems selected for noise sensitivity, mixed
// problems with planted interior continuous minimizers obscured by verified
// random perturbations, and a synthetic settlement-style constrained family.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "qumo/model.hpp"
#include "qumo/transforms.hpp"

namespace qumo::gen {

enum class Family : std::uint8_t { SkDense, ThreeRegular, PlantedQumo, SettlementLike };

struct GenSpec {
  Family family = Family::SkDense;
  std::size_t n = 8;
  std::size_t n_continuous = 1;  // PlantedQumo
  unsigned bits = 7;             // weight precision
  std::size_t count = 10;        // instances to emit
  std::size_t candidates = 10000;  // generated before selection
  std::size_t sensitivity_trials = 25;
  std::uint64_t seed = 0;
  bool select = true;  // eigenvector rejection + sensitivity ranking
  unsigned threads = 1;

  // SettlementLike shape.
  std::size_t parties = 3;
  std::size_t transactions = 3;
  /// Chain of obligations with zero balances and credit: nothing can settle.
  bool chain_topology = false;
};

/// Rounds weights onto the signed integer grid of the given precision: the
/// largest magnitude maps to 2^(bits-1) - 1 steps. Q and b share one scale.
/// All-zero input is returned unchanged.
std::pair<SymWeights, Vec> quantize_weights(const SymWeights& q, const Vec& b,
                                            unsigned bits);

/// The quantization step (one least significant bit) for the given weights.
double quantize_lsb(const SymWeights& q, const Vec& b, unsigned bits);

/// Spin problems (PlusMinusOne, b = 0). With selection on: candidates whose
/// brute-force minimizer equals the projected top eigenvector of Q are
/// rejected, the rest are ranked by how often a 1-LSB weight perturbation
/// moves the brute-force minimizer, and the most sensitive `count` are
/// returned (most sensitive first).
std::vector<QumoProblem> gen_qubo(const GenSpec& spec);

struct PlantedInstance {
  QumoProblem problem;  // ZeroOne domain
  Vec planted;          // certified grid-global minimizer
  std::size_t perturbations_applied = 0;
};

struct PlantedBatch {
  std::vector<PlantedInstance> instances;
  bool budget_exhausted = false;  // fewer instances than requested
};

/// Mixed instances whose global minimizer (over binary patterns x the
/// 1/2^bits grid) has the planted binary pattern and strictly interior
/// continuous values; hundreds of random 1-LSB perturbations are applied,
/// each kept only if the planted point verifiably stays globally optimal.
PlantedBatch gen_planted_qumo(const GenSpec& spec);

/// Parties with balances and credit limits, transactions to settle;
/// objective maximizes settled weight, constraints are two-sided per-party
/// net-position limits with power-of-two widths (so optimal slacks are
/// exactly representable on the verification grid).
transforms::ConstrainedProblem gen_settlement_like(const GenSpec& spec);

}  // namespace qumo::gen
