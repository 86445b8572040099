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

#include "sector_preconditioner.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace optocav::lindblad::detail {

namespace {

constexpr cplx kI{0.0, 1.0};

}  // namespace

SectorPreconditioner::SectorPreconditioner(const SystemParams& params, const ModeLayout& layout,
                                           Mode mode, double shift)
    : layout_(layout), mode_(mode), shift_(mode == Mode::shifted ? shift : 0.0) {
  SystemParams undriven = params;
  undriven.E1 = 0.0;
  undriven.E2 = 0.0;
  const auto ops = fock::build_mode_operators(layout);
  const auto h0 = fock::build_hamiltonian(undriven, ops);
  const auto channels = collapse_channels(params, ops);

  SparseMatrixC effective = -kI * h0.matrix();
  for (const auto& ch : channels) {
    const SparseMatrixC& c = ch.op.matrix();
    effective -= cplx(0.5 * ch.rate) * SparseMatrixC(SparseMatrixC(c.adjoint()) * c);
  }

  const std::size_t n = layout.dim();
  const int max_n = layout.n_cav1 + layout.n_cav2 - 2;
  std::vector<int> sector_of(n);
  std::vector<Eigen::Index> local_of(n);
  sectors_.resize(static_cast<std::size_t>(max_n + 1));
  for (int total = 0; total <= max_n; ++total) {
    auto& sec = sectors_[static_cast<std::size_t>(total)];
    for (int n1 = 0; n1 < layout.n_cav1; ++n1) {
      const int n2 = total - n1;
      if (n2 < 0 || n2 >= layout.n_cav2) continue;
      for (int m = 0; m < layout.n_mech; ++m) {
        const std::size_t i = layout.index(n1, n2, m);
        sector_of[i] = total;
        local_of[i] = static_cast<Eigen::Index>(sec.states.size());
        sec.states.push_back(i);
      }
    }
  }

  std::vector<Eigen::MatrixXcd> blocks;
  for (const auto& sec : sectors_) {
    const auto d = static_cast<Eigen::Index>(sec.states.size());
    blocks.emplace_back(Eigen::MatrixXcd::Zero(d, d));
  }
  for (Eigen::Index k = 0; k < effective.outerSize(); ++k) {
    for (SparseMatrixC::InnerIterator it(effective, k); it; ++it) {
      if (it.value() == cplx(0.0)) continue;
      const auto r = static_cast<std::size_t>(it.row());
      const auto c = static_cast<std::size_t>(it.col());
      if (sector_of[r] != sector_of[c]) {
        throw std::logic_error("undriven generator mixes photon-number sectors");
      }
      blocks[static_cast<std::size_t>(sector_of[r])](local_of[r], local_of[c]) += it.value();
    }
  }
  for (std::size_t s = 0; s < sectors_.size(); ++s) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(blocks[s]);
    if (eig.info() != Eigen::Success) throw std::runtime_error("sector eigendecomposition failed");
    sectors_[s].eigenvalues = eig.eigenvalues();
    sectors_[s].vectors = eig.eigenvectors();
    sectors_[s].vectors_inv = eig.eigenvectors().partialPivLu().inverse();
  }

  const std::pair<const fock::QOperator*, double> photon_loss[] = {{&ops.a1, params.kappa1},
                                                                    {&ops.a2, params.kappa2}};
  for (const auto& [op, rate] : photon_loss) {
    std::vector<Eigen::MatrixXcd> per_sector;
    for (int total = 0; total < max_n; ++total) {
      per_sector.emplace_back(Eigen::MatrixXcd::Zero(
          static_cast<Eigen::Index>(sectors_[static_cast<std::size_t>(total)].states.size()),
          static_cast<Eigen::Index>(sectors_[static_cast<std::size_t>(total + 1)].states.size())));
    }
    const SparseMatrixC& a = op->matrix();
    for (Eigen::Index k = 0; k < a.outerSize(); ++k) {
      for (SparseMatrixC::InnerIterator it(a, k); it; ++it) {
        const auto r = static_cast<std::size_t>(it.row());
        const auto c = static_cast<std::size_t>(it.col());
        per_sector[static_cast<std::size_t>(sector_of[r])](local_of[r], local_of[c]) =
            std::sqrt(rate) * it.value();
      }
    }
    lowering_.push_back(std::move(per_sector));
  }

  // Photon-vacuum block: the bare damped oscillator. Its steady state is only
  // unique for gamma > 0, so a small rate stands in when gamma vanishes.
  const int nm = layout.n_mech;
  const double gamma = params.gamma > 0.0 ? params.gamma
                                          : 1e-3 * std::min(params.kappa1, params.kappa2);
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(nm, nm);
  for (int k = 1; k < nm; ++k) b(k - 1, k) = std::sqrt(static_cast<double>(k));
  const Eigen::MatrixXcd bd = b.adjoint();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(nm, nm);
  Eigen::MatrixXcd a0 = -kI * params.omega_m * (bd * b);
  const double down = gamma * (params.nbar + 1.0);
  const double up = gamma * params.nbar;
  a0 -= 0.5 * down * (bd * b) + 0.5 * up * (b * bd);
  Eigen::MatrixXcd l00 = Eigen::kroneckerProduct(id, a0);
  l00 += Eigen::kroneckerProduct(Eigen::MatrixXcd(a0.conjugate()), id);
  l00 += down * Eigen::kroneckerProduct(Eigen::MatrixXcd(b.conjugate()), b);
  l00 += up * Eigen::kroneckerProduct(Eigen::MatrixXcd(bd.conjugate()), bd);
  if (mode_ == Mode::bordered) {
    l00.row(0).setZero();
    for (int m = 0; m < nm; ++m) l00(0, m + nm * m) = 1.0;
  } else {
    l00.diagonal().array() -= shift_;
  }
  vacuum_block_.compute(l00);
}

Eigen::VectorXcd SectorPreconditioner::solve(const Eigen::VectorXcd& y) const {
  const std::size_t n = layout_.dim();
  const std::size_t ns = sectors_.size();
  auto block_at = [ns](std::vector<Eigen::MatrixXcd>& blocks, std::size_t r, std::size_t c)
      -> Eigen::MatrixXcd& { return blocks[r * ns + c]; };

  std::vector<Eigen::MatrixXcd> x(ns * ns);
  cplx upper_trace = 0.0;
  for (std::size_t r1 = ns; r1-- > 0;) {
    for (std::size_t c1 = ns; c1-- > 0;) {
      const auto& rs = sectors_[r1];
      const auto& cs = sectors_[c1];
      const auto dr = static_cast<Eigen::Index>(rs.states.size());
      const auto dc = static_cast<Eigen::Index>(cs.states.size());
      Eigen::MatrixXcd rhs(dr, dc);
      for (Eigen::Index j = 0; j < dc; ++j) {
        for (Eigen::Index i = 0; i < dr; ++i) {
          rhs(i, j) = y(static_cast<Eigen::Index>(rs.states[static_cast<std::size_t>(i)] +
                                                  n * cs.states[static_cast<std::size_t>(j)]));
        }
      }
      const cplx border_entry = rhs(0, 0);
      if (r1 + 1 < ns && c1 + 1 < ns) {
        const Eigen::MatrixXcd& fed = block_at(x, r1 + 1, c1 + 1);
        for (const auto& low : lowering_) rhs -= low[r1] * fed * low[c1].adjoint();
      }

      Eigen::MatrixXcd& out = block_at(x, r1, c1);
      if (r1 == 0 && c1 == 0) {
        Eigen::VectorXcd v = Eigen::Map<Eigen::VectorXcd>(rhs.data(), rhs.size());
        if (mode_ == Mode::bordered) v(0) = border_entry - upper_trace;
        v = vacuum_block_.solve(v);
        out = Eigen::Map<Eigen::MatrixXcd>(v.data(), dr, dc);
      } else {
        Eigen::MatrixXcd w = rs.vectors_inv * rhs * cs.vectors_inv.adjoint();
        for (Eigen::Index j = 0; j < dc; ++j) {
          const cplx lc = std::conj(cs.eigenvalues(j)) - shift_;
          for (Eigen::Index i = 0; i < dr; ++i) w(i, j) /= rs.eigenvalues(i) + lc;
        }
        out = rs.vectors * w * cs.vectors.adjoint();
        if (r1 == c1) upper_trace += out.trace();
      }
    }
  }

  Eigen::VectorXcd result(static_cast<Eigen::Index>(n * n));
  for (std::size_t r1 = 0; r1 < ns; ++r1) {
    for (std::size_t c1 = 0; c1 < ns; ++c1) {
      const auto& rs = sectors_[r1];
      const auto& cs = sectors_[c1];
      const Eigen::MatrixXcd& blk = block_at(x, r1, c1);
      for (Eigen::Index j = 0; j < blk.cols(); ++j) {
        for (Eigen::Index i = 0; i < blk.rows(); ++i) {
          result(static_cast<Eigen::Index>(rs.states[static_cast<std::size_t>(i)] +
                                           n * cs.states[static_cast<std::size_t>(j)])) = blk(i, j);
        }
      }
    }
  }
  return result;
}

}  // namespace optocav::lindblad::detail
