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

#include "optocav/lindblad/liouvillian.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include "optocav/error.hpp"

namespace optocav::lindblad {

namespace {

constexpr cplx kI{0.0, 1.0};

}  // namespace

std::vector<CollapseChannel> collapse_channels(const SystemParams& params,
                                               const fock::ModeOperators& ops) {
  std::vector<CollapseChannel> out;
  auto add = [&](std::string name, double rate, const fock::QOperator& op) {
    if (rate > 0.0) out.push_back({std::move(name), rate, op});
  };
  add("a1", params.kappa1, ops.a1);
  add("a2", params.kappa2, ops.a2);
  add("b", params.gamma * (params.nbar + 1.0), ops.b);
  add("b_dag", params.gamma * params.nbar, ops.b.adjoint());
  return out;
}

Liouvillian build_liouvillian(const fock::QOperator& hamiltonian, const SystemParams& params,
                              const ModeLayout& layout) {
  params.validate();
  layout.validate();
  if (!(hamiltonian.layout() == layout)) {
    throw ConfigError("Hamiltonian layout differs from the requested layout");
  }
  const auto n = static_cast<Eigen::Index>(layout.dim());
  if (layout.dim() * layout.dim() > kMaxLiouvilleDim) {
    throw DimensionError("Liouville dimension " + std::to_string(layout.dim() * layout.dim()) +
                         " exceeds limit " + std::to_string(kMaxLiouvilleDim));
  }

  SparseMatrixC id(n, n);
  id.setIdentity();

  // With H_eff = H - (i/2) sum_k r_k c_k^dag c_k and vec(A rho B) = (B^T (x) A) vec(rho):
  //   L = -i (1 (x) H_eff) + i (conj(H_eff) (x) 1) + sum_k r_k conj(c_k) (x) c_k
  const auto ops = fock::build_mode_operators(layout);
  const auto channels = collapse_channels(params, ops);
  SparseMatrixC h_eff = hamiltonian.matrix();
  for (const auto& ch : channels) {
    const SparseMatrixC& c = ch.op.matrix();
    h_eff -= cplx(0.0, 0.5 * ch.rate) * SparseMatrixC(SparseMatrixC(c.adjoint()) * c);
  }
  SparseMatrixC l = -kI * SparseMatrixC(Eigen::kroneckerProduct(id, h_eff)) +
                    kI * SparseMatrixC(Eigen::kroneckerProduct(SparseMatrixC(h_eff.conjugate()), id));
  for (const auto& ch : channels) {
    const SparseMatrixC& c = ch.op.matrix();
    l += cplx(ch.rate) * SparseMatrixC(Eigen::kroneckerProduct(SparseMatrixC(c.conjugate()), c));
  }
  l.prune(cplx(0.0));
  l.makeCompressed();
  return {layout, params, std::move(l)};
}

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& rho) {
  return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n);
  if (v.size() != nn * nn) throw std::invalid_argument("vector length is not n^2");
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), nn, nn);
}

Eigen::MatrixXcd apply(const Liouvillian& l, const Eigen::MatrixXcd& rho) {
  return unvectorize(l.matrix * vectorize(rho), l.hilbert_dim());
}

}  // namespace optocav::lindblad
