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

#include "qumo/linalg.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "qumo/rng.hpp"

using namespace qumo;

TEST_CASE("jacobi reproduces a 2x2 closed form") {
  // [[2, 1], [1, 2]] has eigenvalues 1 and 3.
  const std::vector<double> a = {2, 1, 1, 2};
  const auto r = linalg::jacobi_eigen(a, 2);
  CHECK(r.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.values[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("jacobi eigenpairs satisfy the residual and orthonormality") {
  rng::Stream s(314);
  const std::size_t n = 12;
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = s.next_range(-1.0, 1.0);
      a[i * n + j] = a[j * n + i] = v;
    }
  const auto r = linalg::jacobi_eigen(a, n);

  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) trace += a[i * n + i];
  double eigsum = 0.0;
  for (double v : r.values) eigsum += v;
  CHECK(eigsum == doctest::Approx(trace).epsilon(1e-10));

  for (std::size_t k = 0; k < n; ++k) {
    CHECK(r.values[k] >= (k > 0 ? r.values[k - 1] : r.values[0]));
    // || A v - lambda v ||
    double res = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double av = 0.0;
      for (std::size_t j = 0; j < n; ++j) av += a[i * n + j] * r.vectors[k * n + j];
      const double d = av - r.values[k] * r.vectors[k * n + i];
      res += d * d;
      norm += r.vectors[k * n + i] * r.vectors[k * n + i];
    }
    CHECK(std::sqrt(res) < 1e-9);
    CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("top eigenvector belongs to the largest signed eigenvalue") {
  // diag(3, -5): largest signed eigenvalue is 3, eigenvector e_0; the
  // spectral radius (5) belongs to the other one.
  const std::vector<double> a = {3, 0, 0, -5};
  const auto v = linalg::top_eigenvector(a, 2);
  CHECK(std::abs(v[0]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(v[1]) == doctest::Approx(0.0).epsilon(1e-12));
}
