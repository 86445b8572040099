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
#include <cstddef>

#include "optocav/lindblad/liouvillian.hpp"

namespace optocav::lindblad {

enum class SolveMethod { direct, inverse_power };

/// How linear systems in Liouville space are solved.
///   sparse_lu: UMFPACK factorization of the full superoperator.
///   krylov:    GMRES preconditioned by the undriven photon-sector solve.
///   automatic: sparse_lu below lu_threshold, krylov above.
enum class LinearBackend { automatic, sparse_lu, krylov };

struct SolverOptions {
  LinearBackend backend = LinearBackend::automatic;
  std::size_t lu_threshold = 1'024;  ///< Liouville dimension

  /// Relative residual of each Krylov solve. The direct solve weights rows by
  /// photon sector, so this is a per-sector relative accuracy.
  double krylov_tolerance = 1e-10;
  int krylov_restart = 60;
  int krylov_max_iter = 3000;

  /// Inverse power shift; 0 selects 1e-6 kappa_1.
  double shift = 0.0;
  int power_max_iter = 500;
  /// Stop when successive trace-normalized iterates differ by less than this
  /// (max-norm).
  double power_tolerance = 1e-13;
  /// Relative residual of each shifted Krylov solve. The iterate is dominated
  /// by the null direction amplified by 1/shift, so this can stay loose.
  double power_inner_tolerance = 1e-10;

  /// Hard floor on the spectrum of rho; below it a TruncationError is thrown.
  double positivity_abort = -1e-6;
  /// Soft floor; eigenvalues between the two floors set positivity_warning.
  double positivity_warn = -1e-8;
};

struct DensityState {
  Eigen::MatrixXcd rho;
  double residual = 0.0;  ///< ||L vec(rho)||_2
  int iterations = 0;     ///< Krylov steps (direct) or power steps (inverse power)
  SolveMethod method = SolveMethod::direct;
  LinearBackend backend = LinearBackend::sparse_lu;
  double trace_error = 0.0;         ///< |tr rho - 1|
  double hermiticity_defect = 0.0;  ///< max |rho - rho^+| before symmetrization
  double min_eigenvalue = 0.0;
  bool positivity_warning = false;
};

/// Solves the bordered system {L x = 0 with row 0 replaced by tr x = 1}.
/// Throws SolverError when the factorization is singular (degenerate steady
/// state) or the Krylov solve stalls, TruncationError for a clearly
/// non-positive result.
DensityState steady_state_direct(const Liouvillian& l, const SolverOptions& options = {});

/// Inverse iteration x <- (L - s I)^{-1} x with trace normalization. `start`
/// seeds the iteration; the global vacuum is used when it is empty.
DensityState steady_state_inverse_power(const Liouvillian& l, const SolverOptions& options = {},
                                        const Eigen::MatrixXcd& start = {});

/// (1/2) sum |eig(a - b)| for Hermitian arguments.
double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace optocav::lindblad
