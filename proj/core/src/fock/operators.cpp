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

#include "optocav/fock/operators.hpp"

#include <boost/math/special_functions/laguerre.hpp>
#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "optocav/error.hpp"

namespace optocav::fock {

namespace {

constexpr cplx kI{0.0, 1.0};

SparseMatrixC sparse_identity(Eigen::Index n) {
  SparseMatrixC id(n, n);
  id.setIdentity();
  return id;
}

SparseMatrixC single_mode_annihilation(int n) {
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k < n; ++k) t.emplace_back(k - 1, k, std::sqrt(static_cast<double>(k)));
  SparseMatrixC a(n, n);
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

SparseMatrixC kron3(const SparseMatrixC& x, const SparseMatrixC& y, const SparseMatrixC& z) {
  SparseMatrixC yz = Eigen::kroneckerProduct(y, z);
  SparseMatrixC out = Eigen::kroneckerProduct(x, yz);
  out.makeCompressed();
  return out;
}

void check_same_layout(const QOperator& a, const QOperator& b) {
  if (!(a.layout() == b.layout())) throw std::logic_error("operators live on different layouts");
}

}  // namespace

QOperator::QOperator(const ModeLayout& layout, SparseMatrixC matrix)
    : layout_(layout), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(layout_.dim());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw std::logic_error("operator shape does not match cav1 x cav2 x mech layout");
  }
  matrix_.makeCompressed();
}

QOperator QOperator::identity(const ModeLayout& layout) {
  return {layout, sparse_identity(static_cast<Eigen::Index>(layout.dim()))};
}

QOperator QOperator::zero(const ModeLayout& layout) {
  const auto n = static_cast<Eigen::Index>(layout.dim());
  return {layout, SparseMatrixC(n, n)};
}

QOperator QOperator::adjoint() const { return {layout_, SparseMatrixC(matrix_.adjoint())}; }

cplx QOperator::element(std::size_t row, std::size_t col) const {
  return matrix_.coeff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

QOperator operator+(const QOperator& a, const QOperator& b) {
  check_same_layout(a, b);
  return {a.layout_, SparseMatrixC(a.matrix_ + b.matrix_)};
}

QOperator operator-(const QOperator& a, const QOperator& b) {
  check_same_layout(a, b);
  return {a.layout_, SparseMatrixC(a.matrix_ - b.matrix_)};
}

QOperator operator*(const QOperator& a, const QOperator& b) {
  check_same_layout(a, b);
  return {a.layout_, SparseMatrixC(a.matrix_ * b.matrix_)};
}

QOperator operator*(cplx s, const QOperator& a) { return {a.layout_, SparseMatrixC(s * a.matrix_)}; }

QOperator commutator(const QOperator& a, const QOperator& b) { return a * b - b * a; }

double max_abs(const SparseMatrixC& m) {
  double out = 0.0;
  for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrixC::InnerIterator it(m, k); it; ++it) out = std::max(out, std::abs(it.value()));
  }
  return out;
}

double max_abs(const QOperator& op) { return max_abs(op.matrix()); }

ModeOperators build_mode_operators(const ModeLayout& layout) {
  layout.validate();
  const SparseMatrixC i1 = sparse_identity(layout.n_cav1);
  const SparseMatrixC i2 = sparse_identity(layout.n_cav2);
  const SparseMatrixC im = sparse_identity(layout.n_mech);

  ModeOperators ops{
      QOperator(layout, kron3(single_mode_annihilation(layout.n_cav1), i2, im)),
      QOperator(layout, kron3(i1, single_mode_annihilation(layout.n_cav2), im)),
      QOperator(layout, kron3(i1, i2, single_mode_annihilation(layout.n_mech))),
  };

  // Ordering guard: each lowering operator must connect the expected flat indices.
  const bool ordered = ops.a1.element(layout.index(0, 0, 0), layout.index(1, 0, 0)) == 1.0 &&
                       ops.a2.element(layout.index(0, 0, 0), layout.index(0, 1, 0)) == 1.0 &&
                       ops.b.element(layout.index(0, 0, 0), layout.index(0, 0, 1)) == 1.0;
  if (!ordered) throw std::logic_error("tensor ordering is not cav1 x cav2 x mech");
  return ops;
}

QOperator build_hamiltonian(const SystemParams& params, const ModeOperators& ops) {
  params.validate();
  const auto& a1 = ops.a1;
  const auto& a2 = ops.a2;
  const auto& b = ops.b;
  const QOperator a1d = a1.adjoint();
  const QOperator a2d = a2.adjoint();
  const QOperator bd = b.adjoint();
  const QOperator n1 = a1d * a1;
  const QOperator n2 = a2d * a2;

  QOperator h = cplx(params.delta1) * n1 + cplx(params.delta2) * n2;
  h = h + (kI * params.E1) * (a1d - a1) + (kI * params.E2) * (a2d - a2);
  h = h + cplx(params.g) * ((n1 + n2) * (b + bd));
  h = h - cplx(params.J) * (a1d * a2 + a1 * a2d);
  h = h + cplx(params.omega_m) * (bd * b);
  return h;
}

QOperator build_hamiltonian(const SystemParams& params, const ModeLayout& layout) {
  return build_hamiltonian(params, build_mode_operators(layout));
}

double displacement_element(double alpha, int m, int k) {
  if (m < 0 || k < 0) throw std::invalid_argument("Fock indices must be non-negative");
  if (alpha == 0.0) return m == k ? 1.0 : 0.0;
  const double x = alpha * alpha;
  // <m|D|k> for m >= k, and <m|D(alpha)|k> = <k|D(-alpha)|m> otherwise.
  const int hi = std::max(m, k);
  const int lo = std::min(m, k);
  const double a = m >= k ? alpha : -alpha;
  const double log_mag = 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(hi + 1.0)) +
                         (hi - lo) * std::log(std::abs(a)) - 0.5 * x;
  const double sign = (a < 0.0 && (hi - lo) % 2 == 1) ? -1.0 : 1.0;
  return sign * std::exp(log_mag) *
         boost::math::laguerre(static_cast<unsigned>(lo), static_cast<unsigned>(hi - lo), x);
}

PolaronTransform polaron_transform(const SystemParams& params, const ModeLayout& layout,
                                   double tolerance) {
  params.validate();
  layout.validate();
  const double lambda = params.lambda();
  const int nm = layout.n_mech;

  // b^+ - b on the mechanical factor; the exponent is block diagonal in the
  // photon occupation, so each block is exponentiated on its own.
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(nm, nm);
  for (int k = 1; k < nm; ++k) {
    gen(k, k - 1) = std::sqrt(static_cast<double>(k));
    gen(k - 1, k) = -std::sqrt(static_cast<double>(k));
  }

  const int max_cav = std::max(layout.n_cav1, layout.n_cav2);
  PolaronTransform out{QOperator::zero(layout)};
  out.interior_phonon_cutoff =
      static_cast<int>(std::floor(nm - 4.0 * lambda * max_cav));

  std::vector<Eigen::Triplet<cplx>> trip;
  const int max_photons = layout.n_cav1 + layout.n_cav2 - 2;
  std::vector<Eigen::MatrixXd> blocks(static_cast<std::size_t>(max_photons + 1));
  for (int n = 0; n <= max_photons; ++n) {
    Eigen::MatrixXd arg = (lambda * n) * gen;
    blocks[static_cast<std::size_t>(n)] = arg.exp();
  }

  const int interior = std::min(out.interior_phonon_cutoff, nm - 1);
  for (int n1 = 0; n1 < layout.n_cav1; ++n1) {
    for (int n2 = 0; n2 < layout.n_cav2; ++n2) {
      const Eigen::MatrixXd& blk = blocks[static_cast<std::size_t>(n1 + n2)];
      for (int m = 0; m < nm; ++m) {
        for (int k = 0; k < nm; ++k) {
          if (blk(m, k) != 0.0) {
            trip.emplace_back(static_cast<Eigen::Index>(layout.index(n1, n2, m)),
                              static_cast<Eigen::Index>(layout.index(n1, n2, k)), blk(m, k));
          }
        }
      }
    }
  }
  if (interior >= 0) {
    for (int n = 0; n <= max_photons; ++n) {
      const Eigen::MatrixXd& blk = blocks[static_cast<std::size_t>(n)];
      const Eigen::MatrixXd gram = blk.transpose() * blk;
      for (int m = 0; m <= interior; ++m) {
        for (int k = 0; k <= interior; ++k) {
          const double id = m == k ? 1.0 : 0.0;
          out.unitarity_defect = std::max(out.unitarity_defect, std::abs(gram(m, k) - id));
          out.displacement_defect =
              std::max(out.displacement_defect,
                       std::abs(blk(m, k) - displacement_element(lambda * n, m, k)));
        }
      }
    }
  }
  const auto dim = static_cast<Eigen::Index>(layout.dim());
  SparseMatrixC u(dim, dim);
  u.setFromTriplets(trip.begin(), trip.end());
  out.unitary = QOperator(layout, std::move(u));
  out.truncation_warning = interior < 0 || out.unitarity_defect > tolerance;
  return out;
}

std::vector<EigenLevel> eigen_levels(const SystemParams& params, int n_total) {
  params.validate();
  if (params.delta1 != params.delta2) {
    throw ConfigError("eigen_levels requires equal cavity detunings");
  }
  const double w = params.delta1;
  const double dg = params.kerr_shift();
  const double J = params.J;
  const double r2 = std::sqrt(2.0);
  std::vector<EigenLevel> out;
  if (n_total == 1) {
    for (int s : {-1, 1}) {
      out.push_back({1, s, w - dg + s * J, {1.0 / r2, -s / r2}});
    }
  } else if (n_total == 2) {
    for (int eps : {-1, 0, 1}) {
      std::vector<double> v = eps == 0 ? std::vector<double>{1.0 / r2, 0.0, -1.0 / r2}
                                       : std::vector<double>{0.5, eps * r2 / 2.0, 0.5};
      out.push_back({2, eps, 2.0 * w - 4.0 * dg - 2.0 * eps * J, std::move(v)});
    }
  } else {
    throw ConfigError("eigen_levels supports total photon number 1 or 2");
  }
  return out;
}

}  // namespace optocav::fock
