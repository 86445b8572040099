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
#include <Eigen/Sparse>
#include <array>
#include <vector>

#include "optocav/params.hpp"

namespace optocav {

using SparseMatrixC = Eigen::SparseMatrix<cplx>;

namespace fock {

/// Sparse operator on the truncated cav1 (x) cav2 (x) mech Hilbert space.
/// Immutable once built.
class QOperator {
 public:
  QOperator(const ModeLayout& layout, SparseMatrixC matrix);

  static QOperator identity(const ModeLayout& layout);
  static QOperator zero(const ModeLayout& layout);

  const ModeLayout& layout() const noexcept { return layout_; }
  const SparseMatrixC& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return layout_.dim(); }

  QOperator adjoint() const;
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix_); }

  /// Matrix element <row|op|col> in the flat basis.
  cplx element(std::size_t row, std::size_t col) const;

  friend QOperator operator+(const QOperator& a, const QOperator& b);
  friend QOperator operator-(const QOperator& a, const QOperator& b);
  friend QOperator operator*(const QOperator& a, const QOperator& b);
  friend QOperator operator*(cplx s, const QOperator& a);

 private:
  ModeLayout layout_;
  SparseMatrixC matrix_;
};

QOperator commutator(const QOperator& a, const QOperator& b);

/// Largest absolute matrix entry.
double max_abs(const QOperator& op);
double max_abs(const SparseMatrixC& m);

/// Annihilation operators of both cavities and the mechanical resonator.
struct ModeOperators {
  QOperator a1;
  QOperator a2;
  QOperator b;
};

/// Builds a1, a2, b with <n-1|a|n> = sqrt(n) on their own tensor factor.
ModeOperators build_mode_operators(const ModeLayout& layout);

/// Full lab-frame Hamiltonian in the frame rotating with the pump:
///   sum_j [D_j n_j + i E_j (a_j^+ - a_j) + g n_j (b + b^+)]
///   - J (a1^+ a2 + a1 a2^+) + w_m b^+ b
QOperator build_hamiltonian(const SystemParams& params, const ModeLayout& layout);
QOperator build_hamiltonian(const SystemParams& params, const ModeOperators& ops);

/// Photon-number conditioned displacement exp[lambda (n1 + n2)(b^+ - b)] and its
/// truncation diagnostics.
struct PolaronTransform {
  QOperator unitary;
  /// Highest phonon number treated as interior: n_mech - 4 lambda max(n_cav).
  int interior_phonon_cutoff = 0;
  /// max |U^+ U - 1| on interior states.
  double unitarity_defect = 0.0;
  /// max deviation of interior matrix elements from the exact displacement.
  /// Grows toward the interior edge, where the truncated ladder cannot hold
  /// the displaced state; reported for diagnostics only.
  double displacement_defect = 0.0;
  /// Set when the interior is empty or the unitarity defect exceeds the
  /// requested tolerance.
  bool truncation_warning = false;
};

PolaronTransform polaron_transform(const SystemParams& params, const ModeLayout& layout,
                                   double tolerance = 1e-8);

/// Exact matrix element <m|exp[alpha (b^+ - b)]|k> of the untruncated
/// displacement operator for real alpha.
double displacement_element(double alpha, int m, int k);

/// Closed-system level of the photon sector with fixed total photon number.
struct EigenLevel {
  int n_total = 0;
  int branch = 0;  ///< +-1 for n_total = 1, epsilon in {-1, 0, 1} for n_total = 2
  double energy = 0.0;
  /// Normalized eigenvector over |n1, n2> with n1 + n2 = n_total, ordered by n1
  /// descending: (|1,0>, |0,1>) or (|2,0>, |1,1>, |0,2>).
  std::vector<double> amplitudes;
};

/// Tunneling-split levels of the undriven, polaron-transformed Hamiltonian for
/// equal detunings (rotating frame, so omega_1 = omega_2 = Delta).
///
///   n_total = 1: E = Delta - D_g + s J, state (|1,0> - s|0,1>)/sqrt(2)
///   n_total = 2: E = 2 Delta - 4 D_g - 2 eps J,
///                eps = +-1: (|2,0> + sqrt(2) eps |1,1> + |0,2>)/2
///                eps =  0 : (|2,0> - |0,2>)/sqrt(2)
///
/// The two-photon Kerr shift is 4 D_g (2^2 D_g), the same D_g = g^2/w_m as in
/// the one-photon group. With hopping -J(a1^+ a2 + h.c.) the symmetric
/// one-photon state is the lower one, and the eps = 0 two-photon state is
/// antisymmetric; both are checked against dense diagonalization in the tests.
std::vector<EigenLevel> eigen_levels(const SystemParams& params, int n_total);

}  // namespace fock
}  // namespace optocav
