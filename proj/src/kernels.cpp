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

#include "qumo/kernels.hpp"

#include <algorithm>
#include <atomic>

#if defined(__x86_64__) || defined(_M_X64)
#define QUMO_X86 1
#include <immintrin.h>
#else
#define QUMO_X86 0
#endif

#if defined(__aarch64__) || defined(_M_ARM64)
#define QUMO_ARM64 1
#include <arm_neon.h>
#else
#define QUMO_ARM64 0
#endif

namespace qumo::kernels {

// ---------------------------------------------------------------------------
// Scalar reference kernels. These define the semantics; the vectorized
// variants below must agree with them to rounding.
// ---------------------------------------------------------------------------

namespace scalar {

void matvec(const double* q, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = q + i * n;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
    out[i] = acc;
  }
}

void matvec_b8(const double* q, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = q + i * n;
    double acc[kBlock] = {0, 0, 0, 0, 0, 0, 0, 0};
    for (std::size_t j = 0; j < n; ++j) {
      const double qv = row[j];
      const double* xj = x + j * kBlock;
      for (std::size_t c = 0; c < kBlock; ++c) acc[c] += qv * xj[c];
    }
    double* oi = out + i * kBlock;
    for (std::size_t c = 0; c < kBlock; ++c) oi[c] = acc[c];
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void step_update_b8(const double* x, const double* xp, const double* g,
                    double dt, double alpha, double beta, double gamma,
                    double lo, double hi, double* xn, std::size_t n) {
  const std::size_t m = n * kBlock;
  for (std::size_t k = 0; k < m; ++k) {
    const double v =
        x[k] + dt * (alpha * g[k] - beta * x[k] + gamma * (x[k] - xp[k]));
    // Comparison form so NaN passes through to the finiteness check.
    xn[k] = v < lo ? lo : (v > hi ? hi : v);
  }
}

void sign_b8(const double* x, double* out, std::size_t n) {
  const std::size_t m = n * kBlock;
  for (std::size_t k = 0; k < m; ++k)
    out[k] = x[k] > 0.0 ? 1.0 : (x[k] < 0.0 ? -1.0 : 0.0);
}

}  // namespace scalar

// ---------------------------------------------------------------------------
// AVX2 variants (x86-64). Compiled with a function target so the binary runs
// on older CPUs and falls back to scalar at dispatch time.
// ---------------------------------------------------------------------------

#if QUMO_X86 && (defined(__GNUC__) || defined(__clang__))
#define QUMO_HAVE_AVX2 1

namespace avx2 {

__attribute__((target("avx2,fma"))) void matvec(const double* q,
                                                const double* x, double* out,
                                                std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = q + i * n;
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(row + j), _mm256_loadu_pd(x + j),
                            acc);
    }
    double lanes[4];
    _mm256_storeu_pd(lanes, acc);
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; j < n; ++j) s += row[j] * x[j];
    out[i] = s;
  }
}

__attribute__((target("avx2,fma"))) void matvec_b8(const double* q,
                                                   const double* x, double* out,
                                                   std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = q + i * n;
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    for (std::size_t j = 0; j < n; ++j) {
      const __m256d qv = _mm256_set1_pd(row[j]);
      const double* xj = x + j * kBlock;
      acc0 = _mm256_fmadd_pd(qv, _mm256_loadu_pd(xj), acc0);
      acc1 = _mm256_fmadd_pd(qv, _mm256_loadu_pd(xj + 4), acc1);
    }
    _mm256_storeu_pd(out + i * kBlock, acc0);
    _mm256_storeu_pd(out + i * kBlock + 4, acc1);
  }
}

__attribute__((target("avx2,fma"))) double dot(const double* a, const double* b,
                                               std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  double lanes[4];
  _mm256_storeu_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

__attribute__((target("avx2,fma"))) void step_update_b8(
    const double* x, const double* xp, const double* g, double dt, double alpha,
    double beta, double gamma, double lo, double hi, double* xn,
    std::size_t n) {
  const __m256d vdt = _mm256_set1_pd(dt);
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  const __m256d vg = _mm256_set1_pd(gamma);
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vhi = _mm256_set1_pd(hi);
  const std::size_t m = n * kBlock;
  for (std::size_t k = 0; k < m; k += 4) {
    const __m256d xv = _mm256_loadu_pd(x + k);
    const __m256d xpv = _mm256_loadu_pd(xp + k);
    const __m256d gv = _mm256_loadu_pd(g + k);
    // alpha*g - beta*x + gamma*(x - xp)
    __m256d inner = _mm256_mul_pd(va, gv);
    inner = _mm256_fnmadd_pd(vb, xv, inner);
    inner = _mm256_fmadd_pd(vg, _mm256_sub_pd(xv, xpv), inner);
    __m256d v = _mm256_fmadd_pd(vdt, inner, xv);
    v = _mm256_min_pd(vhi, _mm256_max_pd(vlo, v));
    _mm256_storeu_pd(xn + k, v);
  }
}

__attribute__((target("avx2"))) void sign_b8(const double* x, double* out,
                                             std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d none = _mm256_set1_pd(-1.0);
  const std::size_t m = n * kBlock;
  for (std::size_t k = 0; k < m; k += 4) {
    const __m256d xv = _mm256_loadu_pd(x + k);
    const __m256d pos = _mm256_and_pd(_mm256_cmp_pd(xv, zero, _CMP_GT_OQ), one);
    const __m256d neg = _mm256_and_pd(_mm256_cmp_pd(xv, zero, _CMP_LT_OQ), none);
    _mm256_storeu_pd(out + k, _mm256_or_pd(pos, neg));
  }
}

}  // namespace avx2
#else
#define QUMO_HAVE_AVX2 0
#endif

// ---------------------------------------------------------------------------
// NEON variants (aarch64; NEON is architecturally guaranteed there).
// ---------------------------------------------------------------------------

#if QUMO_ARM64
#define QUMO_HAVE_NEON 1

namespace neon {

void matvec(const double* q, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = q + i * n;
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2)
      acc = vfmaq_f64(acc, vld1q_f64(row + j), vld1q_f64(x + j));
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; j < n; ++j) s += row[j] * x[j];
    out[i] = s;
  }
}

void matvec_b8(const double* q, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = q + i * n;
    float64x2_t a0 = vdupq_n_f64(0.0), a1 = a0, a2 = a0, a3 = a0;
    for (std::size_t j = 0; j < n; ++j) {
      const float64x2_t qv = vdupq_n_f64(row[j]);
      const double* xj = x + j * kBlock;
      a0 = vfmaq_f64(a0, qv, vld1q_f64(xj));
      a1 = vfmaq_f64(a1, qv, vld1q_f64(xj + 2));
      a2 = vfmaq_f64(a2, qv, vld1q_f64(xj + 4));
      a3 = vfmaq_f64(a3, qv, vld1q_f64(xj + 6));
    }
    double* oi = out + i * kBlock;
    vst1q_f64(oi, a0);
    vst1q_f64(oi + 2, a1);
    vst1q_f64(oi + 4, a2);
    vst1q_f64(oi + 6, a3);
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
  double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace neon
#else
#define QUMO_HAVE_NEON 0
#endif

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

namespace {

Isa detect_isa() {
#if QUMO_HAVE_AVX2
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return Isa::Avx2;
#endif
#if QUMO_HAVE_NEON
  return Isa::Neon;
#endif
  return Isa::Scalar;
}

std::atomic<Isa> g_isa{detect_isa()};

}  // namespace

Isa active_isa() { return g_isa.load(std::memory_order_relaxed); }

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
    default:
      return "scalar";
  }
}

void force_isa(Isa isa) {
  Isa effective = Isa::Scalar;
  if (isa == detect_isa() || isa == Isa::Scalar) effective = isa;
  g_isa.store(effective, std::memory_order_relaxed);
}

void matvec(const double* q, const double* x, double* out, std::size_t n) {
  switch (active_isa()) {
#if QUMO_HAVE_AVX2
    case Isa::Avx2:
      return avx2::matvec(q, x, out, n);
#endif
#if QUMO_HAVE_NEON
    case Isa::Neon:
      return neon::matvec(q, x, out, n);
#endif
    default:
      return scalar::matvec(q, x, out, n);
  }
}

void matvec_b8(const double* q, const double* x, double* out, std::size_t n) {
  switch (active_isa()) {
#if QUMO_HAVE_AVX2
    case Isa::Avx2:
      return avx2::matvec_b8(q, x, out, n);
#endif
#if QUMO_HAVE_NEON
    case Isa::Neon:
      return neon::matvec_b8(q, x, out, n);
#endif
    default:
      return scalar::matvec_b8(q, x, out, n);
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  switch (active_isa()) {
#if QUMO_HAVE_AVX2
    case Isa::Avx2:
      return avx2::dot(a, b, n);
#endif
#if QUMO_HAVE_NEON
    case Isa::Neon:
      return neon::dot(a, b, n);
#endif
    default:
      return scalar::dot(a, b, n);
  }
}

void step_update_b8(const double* x, const double* xp, const double* g,
                    double dt, double alpha, double beta, double gamma,
                    double lo, double hi, double* xn, std::size_t n) {
#if QUMO_HAVE_AVX2
  if (active_isa() == Isa::Avx2)
    return avx2::step_update_b8(x, xp, g, dt, alpha, beta, gamma, lo, hi, xn, n);
#endif
  scalar::step_update_b8(x, xp, g, dt, alpha, beta, gamma, lo, hi, xn, n);
}

void sign_b8(const double* x, double* out, std::size_t n) {
#if QUMO_HAVE_AVX2
  if (active_isa() == Isa::Avx2) return avx2::sign_b8(x, out, n);
#endif
  scalar::sign_b8(x, out, n);
}

}  // namespace qumo::kernels
