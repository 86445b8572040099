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

#include "optocav/lindblad/steady_state.hpp"

namespace optocav::lindblad {

/// Steady-state photon statistics. S_j is absent when E_j = 0, g2_j is absent
/// when <n_j> is below kMinPopulation.
struct CoherenceResult {
  std::optional<double> S1;
  std::optional<double> S2;
  std::optional<double> g2_1;
  std::optional<double> g2_2;
  std::array<double, 2> mean_photons{};
  double mean_phonons = 0.0;
};

inline constexpr double kMinPopulation = 1e-14;

/// tr(rho op).
cplx expectation(const Eigen::MatrixXcd& rho, const SparseMatrixC& op);

/// S_j = kappa_j^2 <n_j> / (4 E_j^2), g2_j = <a_j^+2 a_j^2> / <n_j>^2.
CoherenceResult observables(const DensityState& state, const SystemParams& params,
                            const fock::ModeOperators& ops);

/// Observables together with the solver diagnostics that produced them.
struct NumericPoint {
  CoherenceResult coherence;
  DensityState state;
};

/// Builds H and L for one parameter point and solves for the steady state.
NumericPoint solve_numeric(const SystemParams& params, const ModeLayout& layout,
                           SolveMethod method = SolveMethod::direct,
                           const SolverOptions& options = {});

/// Largest relative change of S_j and g2_j between two truncations.
struct TruncationCheck {
  NumericPoint coarse;
  NumericPoint fine;
  double max_relative_change = 0.0;
  bool converged = false;  ///< max_relative_change below the tolerance
};

TruncationCheck truncation_convergence(const SystemParams& params, const ModeLayout& coarse,
                                       const ModeLayout& fine, double tolerance = 0.01,
                                       const SolverOptions& options = {});

}  // namespace optocav::lindblad
