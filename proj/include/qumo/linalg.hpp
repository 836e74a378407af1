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

#include <cstddef>
#include <vector>

namespace qumo::linalg {

/// Full eigendecomposition of a symmetric matrix.
struct EigenResult {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // row-major: vectors[k*n + i] = component i of eigenvector k
};

/// Cyclic Jacobi rotations; exact enough for the small dense matrices used in
/// instance generation and as a reference for the power-iteration estimate.
/// `a` is row-major n x n and must be symmetric.
EigenResult jacobi_eigen(const std::vector<double>& a, std::size_t n);

/// Eigenvector of the largest (signed) eigenvalue.
std::vector<double> top_eigenvector(const std::vector<double>& a, std::size_t n);

}  // namespace qumo::linalg
