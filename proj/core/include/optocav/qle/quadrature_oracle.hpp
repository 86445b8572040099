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

#include <array>
#include <optional>

#include "optocav/params.hpp"

namespace optocav::qle {

struct QuadratureOptions {
  double tolerance = 1e-10;  ///< relative change between successive node counts
  int max_nodes = 64;        ///< Gauss-Legendre nodes per dimension
};

struct QuadratureResult {
  std::optional<double> g2_1;
  std::optional<double> g2_2;
  std::array<double, 2> mean_photons{};
  int nodes = 0;
  double last_change = 0.0;
};

/// Independent evaluation of g2_j by direct quadrature of the closed-form
/// phonon correlators, without series expansion.
///
/// The photon amplitudes are
///   a(t)   = int_0^inf du  exp(-M1 u) E exp(-i P(t-u))
///   A(t)   = int_0^inf du0 du1 exp(-M2 u0) S exp(-M1 u1) E
///            exp(-i P(t-u0)) exp(-i P(t-u0-u1))
/// so <a_j^+2 a_j^2> is a four-fold integral of a four-point correlator. That
/// correlator is 2 pi / w_m periodic in every delay, so each half-line folds
/// onto one period with the geometric factor (1 - exp(-M T))^{-1}; the folded
/// integrals are done by tensor Gauss-Legendre with the node count raised until
/// successive results agree to the tolerance. Exact in J.
///
/// Throws SolverError when max_nodes is reached without convergence.
QuadratureResult quadrature_oracle_g2(const SystemParams& params,
                                      const QuadratureOptions& options = {});

}  // namespace optocav::qle
