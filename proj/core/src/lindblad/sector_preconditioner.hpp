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
#include <vector>

#include "optocav/lindblad/liouvillian.hpp"

namespace optocav::lindblad::detail {

/// Approximate inverse of the Liouvillian built from its undriven part.
///
/// Without pumping the total photon number N = n1 + n2 is conserved by the
/// Hamiltonian, so rho splits into blocks X_{N,N'} and the undriven generator
/// is block lower triangular: photon loss feeds X_{N,N'} from X_{N+1,N'+1}.
/// Each diagonal block is the Sylvester operator X -> A_N X + X A_N'^+ - s X
/// with A_N = -i H_N - K_N/2, solved by eigendecomposition of A_N. Mechanical
/// jump terms are kept only in the photon-vacuum block, which is solved
/// densely; the bordered variant replaces its first row by the trace.
class SectorPreconditioner {
 public:
  enum class Mode { bordered, shifted };

  SectorPreconditioner(const SystemParams& params, const ModeLayout& layout, Mode mode,
                       double shift);

  /// Approximately solves (bordered or shifted) L x = y.
  Eigen::VectorXcd solve(const Eigen::VectorXcd& y) const;

 private:
  struct Sector {
    std::vector<std::size_t> states;  // flat Hilbert indices, local order
    Eigen::VectorXcd eigenvalues;
    Eigen::MatrixXcd vectors;
    Eigen::MatrixXcd vectors_inv;
  };

  ModeLayout layout_;
  Mode mode_;
  double shift_;
  std::vector<Sector> sectors_;
  // lowering[j][N]: a_j restricted to sector N+1 -> N, scaled by sqrt(kappa_j)
  std::vector<std::vector<Eigen::MatrixXcd>> lowering_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> vacuum_block_;
};

}  // namespace optocav::lindblad::detail
