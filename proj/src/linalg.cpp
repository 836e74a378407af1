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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qumo/error.hpp"

namespace qumo::linalg {

EigenResult jacobi_eigen(const std::vector<double>& a, std::size_t n) {
  if (a.size() != n * n) throw InvalidArgument("jacobi_eigen: matrix size mismatch");
  std::vector<double> m = a;
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += m[i * n + j] * m[i * n + j];
    return s;
  };

  double scale = 0.0;
  for (double x : m) scale = std::max(scale, std::abs(x));
  const double tol = scale > 0 ? 1e-30 * scale * scale : 0.0;

  for (int sweep = 0; sweep < 100 && off_norm() > tol; ++sweep) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = m[p * n + q];
        if (apq == 0.0) continue;
        const double app = m[p * n + p];
        const double aqq = m[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        // t = sign(theta) / (|theta| + sqrt(theta^2 + 1)), the smaller root
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double mkp = m[k * n + p];
          const double mkq = m[k * n + q];
          m[k * n + p] = c * mkp - s * mkq;
          m[k * n + q] = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double mpk = m[p * n + k];
          const double mqk = m[q * n + k];
          m[p * n + k] = c * mpk - s * mqk;
          m[q * n + k] = s * mpk + c * mqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p];
          const double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return m[i * n + i] < m[j * n + j];
  });

  EigenResult out;
  out.values.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = m[order[k] * n + order[k]];
    for (std::size_t i = 0; i < n; ++i)
      out.vectors[k * n + i] = v[i * n + order[k]];
  }
  return out;
}

std::vector<double> top_eigenvector(const std::vector<double>& a, std::size_t n) {
  const EigenResult r = jacobi_eigen(a, n);
  return {r.vectors.begin() + static_cast<std::ptrdiff_t>((n - 1) * n),
          r.vectors.begin() + static_cast<std::ptrdiff_t>(n * n)};
}

}  // namespace qumo::linalg
