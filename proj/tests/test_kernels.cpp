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

// Equivalence tests between the scalar reference kernels and whatever
// vectorized variant the host selected.

#include "qumo/kernels.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "qumo/rng.hpp"

using namespace qumo;

namespace {

struct IsaGuard {
  kernels::Isa saved;
  IsaGuard() : saved(kernels::active_isa()) {}
  ~IsaGuard() { kernels::force_isa(saved); }
};

std::vector<double> random_vec(std::size_t n, rng::Stream& s) {
  std::vector<double> v(n);
  for (auto& x : v) x = s.next_range(-2.0, 2.0);
  return v;
}

}  // namespace

TEST_CASE("vectorized matvec matches the scalar reference") {
  IsaGuard guard;
  rng::Stream s(2024);
  for (std::size_t n : {1u, 3u, 4u, 7u, 16u, 33u, 64u}) {
    const auto q = random_vec(n * n, s);
    const auto x = random_vec(n, s);
    std::vector<double> fast(n), ref(n);

    kernels::force_isa(guard.saved);
    kernels::matvec(q.data(), x.data(), fast.data(), n);
    kernels::force_isa(kernels::Isa::Scalar);
    kernels::matvec(q.data(), x.data(), ref.data(), n);

    for (std::size_t i = 0; i < n; ++i)
      CHECK(fast[i] == doctest::Approx(ref[i]).epsilon(1e-13));
  }
}

TEST_CASE("vectorized block matvec matches the scalar reference") {
  IsaGuard guard;
  rng::Stream s(4048);
  constexpr std::size_t B = kernels::kBlock;
  for (std::size_t n : {1u, 5u, 12u, 31u}) {
    const auto q = random_vec(n * n, s);
    const auto x = random_vec(n * B, s);
    std::vector<double> fast(n * B), ref(n * B);

    kernels::force_isa(guard.saved);
    kernels::matvec_b8(q.data(), x.data(), fast.data(), n);
    kernels::force_isa(kernels::Isa::Scalar);
    kernels::matvec_b8(q.data(), x.data(), ref.data(), n);

    for (std::size_t k = 0; k < n * B; ++k)
      CHECK(fast[k] == doctest::Approx(ref[k]).epsilon(1e-13));
  }
}

TEST_CASE("block matvec agrees with per-column matvec") {
  rng::Stream s(11);
  constexpr std::size_t B = kernels::kBlock;
  const std::size_t n = 9;
  const auto q = random_vec(n * n, s);
  const auto x = random_vec(n * B, s);
  std::vector<double> blocked(n * B);
  kernels::matvec_b8(q.data(), x.data(), blocked.data(), n);

  for (std::size_t c = 0; c < B; ++c) {
    std::vector<double> col(n), out(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = x[i * B + c];
    kernels::matvec(q.data(), col.data(), out.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(blocked[i * B + c] == doctest::Approx(out[i]).epsilon(1e-13));
  }
}

TEST_CASE("dot matches the scalar reference") {
  IsaGuard guard;
  rng::Stream s(77);
  for (std::size_t n : {1u, 4u, 13u, 100u}) {
    const auto a = random_vec(n, s);
    const auto b = random_vec(n, s);
    kernels::force_isa(guard.saved);
    const double fast = kernels::dot(a.data(), b.data(), n);
    kernels::force_isa(kernels::Isa::Scalar);
    const double ref = kernels::dot(a.data(), b.data(), n);
    CHECK(fast == doctest::Approx(ref).epsilon(1e-13));
  }
}

TEST_CASE("step update clips and matches the reference") {
  IsaGuard guard;
  rng::Stream s(5);
  constexpr std::size_t B = kernels::kBlock;
  const std::size_t n = 6;
  const auto x = random_vec(n * B, s);
  const auto xp = random_vec(n * B, s);
  const auto g = random_vec(n * B, s);
  std::vector<double> fast(n * B), ref(n * B);

  kernels::force_isa(guard.saved);
  kernels::step_update_b8(x.data(), xp.data(), g.data(), 0.7, 1.3, 0.4, 0.9,
                          -1.0, 1.0, fast.data(), n);
  kernels::force_isa(kernels::Isa::Scalar);
  kernels::step_update_b8(x.data(), xp.data(), g.data(), 0.7, 1.3, 0.4, 0.9,
                          -1.0, 1.0, ref.data(), n);
  for (std::size_t k = 0; k < n * B; ++k) {
    CHECK(ref[k] >= -1.0);
    CHECK(ref[k] <= 1.0);
    CHECK(fast[k] == doctest::Approx(ref[k]).epsilon(1e-12));
  }
}

TEST_CASE("step update propagates NaN in both variants") {
  IsaGuard guard;
  constexpr std::size_t B = kernels::kBlock;
  std::vector<double> x(B, 0.0), xp(B, 0.0), g(B, 0.0), out(B, 0.0);
  g[3] = std::nan("");
  for (kernels::Isa isa : {kernels::active_isa(), kernels::Isa::Scalar}) {
    kernels::force_isa(isa);
    kernels::step_update_b8(x.data(), xp.data(), g.data(), 1.0, 1.0, 0.0, 0.0,
                            -1.0, 1.0, out.data(), 1);
    CHECK(std::isnan(out[3]));
    CHECK(out[0] == 0.0);
  }
}

TEST_CASE("sign kernel maps zero to zero") {
  IsaGuard guard;
  constexpr std::size_t B = kernels::kBlock;
  std::vector<double> x = {-2.0, -0.5, -0.0, 0.0, 0.25, 3.0, -1.0, 1.0};
  std::vector<double> out(B);
  for (kernels::Isa isa : {kernels::active_isa(), kernels::Isa::Scalar}) {
    kernels::force_isa(isa);
    kernels::sign_b8(x.data(), out.data(), 1);
    CHECK(out[0] == -1.0);
    CHECK(out[1] == -1.0);
    CHECK(out[2] == 0.0);
    CHECK(out[3] == 0.0);
    CHECK(out[4] == 1.0);
    CHECK(out[5] == 1.0);
    CHECK(out[6] == -1.0);
    CHECK(out[7] == 1.0);
  }
}

TEST_CASE("forcing an unsupported ISA falls back to scalar") {
  IsaGuard guard;
  kernels::force_isa(kernels::Isa::Neon);
  // On a non-NEON host this must land on scalar; on NEON hosts it stays.
  const kernels::Isa got = kernels::active_isa();
  CHECK((got == kernels::Isa::Neon || got == kernels::Isa::Scalar));
}
