// Copyright 2026 The optocav Authors
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

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "optocav/fock/operators.hpp"

namespace optocav::lindblad {

/// One dissipator rate * D[op], with D[c]rho = c rho c^+ - {c^+ c, rho}/2.
struct CollapseChannel {
  std::string name;
  double rate = 0.0;
  fock::QOperator op;
};

/// kappa_1 D[a1] + kappa_2 D[a2] + gamma(nbar+1) D[b] + gamma nbar D[b^+];
/// channels with zero rate are omitted.
std::vector<CollapseChannel> collapse_channels(const SystemParams& params,
                                               const fock::ModeOperators& ops);

/// Superoperator acting on column-major vectorized density matrices:
/// vec(rho)[i + n j] = rho(i, j).
struct Liouvillian {
  ModeLayout layout;
  SystemParams params;
  SparseMatrixC matrix;

  std::size_t hilbert_dim() const noexcept { return layout.dim(); }
  std::size_t dim() const noexcept { return layout.dim() * layout.dim(); }
};

/// Upper bound on the Liouville-space dimension accepted by build_liouvillian.
inline constexpr std::size_t kMaxLiouvilleDim = 1'000'000;

/// L = -i[H, .] + sum_k rate_k D[c_k].
/// Throws DimensionError when the Liouville space exceeds kMaxLiouvilleDim.
Liouvillian build_liouvillian(const fock::QOperator& hamiltonian, const SystemParams& params,
                              const ModeLayout& layout);

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& rho);
Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, std::size_t n);

/// Flat index of rho(row, col) inside vec(rho).
inline std::size_t vec_index(std::size_t row, std::size_t col, std::size_t n) noexcept {
  return row + n * col;
}

/// unvec(L vec(rho)).
Eigen::MatrixXcd apply(const Liouvillian& l, const Eigen::MatrixXcd& rho);

}  // namespace optocav::lindblad
