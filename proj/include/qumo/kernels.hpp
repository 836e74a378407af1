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

// Dense inner-loop kernels behind the solver dynamics. Each kernel has a
// scalar reference implementation and vectorized variants (AVX2 on x86-64,
// NEON on aarch64) selected once at startup; tests check the variants agree
// with the reference. Selection is a per-process constant, so results never
// depend on thread count or call site.
//
// Batched layout: sample blocks are n x 8 row-major, i.e. row i holds the
// value of variable i for 8 independent samples, contiguously.

#include <cstddef>

namespace qumo::kernels {

inline constexpr std::size_t kBlock = 8;

enum class Isa { Scalar, Avx2, Neon };

/// Currently selected instruction set (detected on first use).
Isa active_isa();

/// Name for logs/CLI ("scalar", "avx2", "neon").
const char* isa_name(Isa isa);

/// Override selection; requesting an unsupported ISA falls back to scalar.
/// Intended for equivalence tests and the --kernel CLI flag.
void force_isa(Isa isa);

/// out = Q * x for a dense symmetric row-major n x n matrix.
void matvec(const double* q, const double* x, double* out, std::size_t n);

/// out = Q * X for a block of 8 column vectors (n x 8 row-major).
void matvec_b8(const double* q, const double* x, double* out, std::size_t n);

double dot(const double* a, const double* b, std::size_t n);

/// Fused iterate update over a block:
///   xn = clamp(x + dt * (alpha * g - beta * x + gamma * (x - xp)), lo, hi)
/// Arrays are n x 8 row-major blocks.
void step_update_b8(const double* x, const double* xp, const double* g,
                    double dt, double alpha, double beta, double gamma,
                    double lo, double hi, double* xn, std::size_t n);

/// Elementwise sign over a block; sign(0) == 0 (the in-dynamics convention).
void sign_b8(const double* x, double* out, std::size_t n);

}  // namespace qumo::kernels
