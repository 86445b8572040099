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

#include "optocav/lindblad/observables.hpp"

#include <algorithm>
#include <cmath>

namespace optocav::lindblad {

cplx expectation(const Eigen::MatrixXcd& rho, const SparseMatrixC& op) {
  cplx sum = 0.0;
  for (Eigen::Index k = 0; k < op.outerSize(); ++k) {
    for (SparseMatrixC::InnerIterator it(op, k); it; ++it) {
      sum += rho(it.col(), it.row()) * it.value();
    }
  }
  return sum;
}

CoherenceResult observables(const DensityState& state, const SystemParams& params,
                            const fock::ModeOperators& ops) {
  CoherenceResult out;
  const fock::QOperator* modes[] = {&ops.a1, &ops.a2};
  std::optional<double>* spectra[] = {&out.S1, &out.S2};
  std::optional<double>* g2s[] = {&out.g2_1, &out.g2_2};
  for (int j = 0; j < 2; ++j) {
    const SparseMatrixC& a = modes[j]->matrix();
    const SparseMatrixC ad = a.adjoint();
    const SparseMatrixC n_op = ad * a;
    const SparseMatrixC pair = SparseMatrixC(ad * ad) * SparseMatrixC(a * a);
    const double n = std::max(0.0, expectation(state.rho, n_op).real());
    const double p = std::max(0.0, expectation(state.rho, pair).real());
    out.mean_photons[static_cast<std::size_t>(j)] = n;
    const double e = params.pump(j + 1);
    const double k = params.kappa(j + 1);
    if (e > 0.0) *spectra[j] = k * k * n / (4.0 * e * e);
    if (n >= kMinPopulation) *g2s[j] = p / (n * n);
  }
  const SparseMatrixC& b = ops.b.matrix();
  out.mean_phonons = expectation(state.rho, SparseMatrixC(b.adjoint()) * b).real();
  return out;
}

NumericPoint solve_numeric(const SystemParams& params, const ModeLayout& layout,
                           SolveMethod method, const SolverOptions& options) {
  params.validate();
  layout.validate();
  const auto ops = fock::build_mode_operators(layout);
  const auto l = build_liouvillian(fock::build_hamiltonian(params, ops), params, layout);
  DensityState state = method == SolveMethod::direct ? steady_state_direct(l, options)
                                                     : steady_state_inverse_power(l, options);
  auto coherence = observables(state, params, ops);
  return {std::move(coherence), std::move(state)};
}

TruncationCheck truncation_convergence(const SystemParams& params, const ModeLayout& coarse,
                                       const ModeLayout& fine, double tolerance,
                                       const SolverOptions& options) {
  TruncationCheck out{solve_numeric(params, coarse, SolveMethod::direct, options),
                      solve_numeric(params, fine, SolveMethod::direct, options), 0.0, false};
  auto compare = [&](const std::optional<double>& a, const std::optional<double>& b) {
    if (!a || !b) return;
    const double scale = std::max(std::abs(*a), std::abs(*b));
    if (scale > 0.0) {
      out.max_relative_change = std::max(out.max_relative_change, std::abs(*a - *b) / scale);
    }
  };
  const auto& c = out.coarse.coherence;
  const auto& f = out.fine.coherence;
  compare(c.S1, f.S1);
  compare(c.S2, f.S2);
  compare(c.g2_1, f.g2_1);
  compare(c.g2_2, f.g2_2);
  out.converged = out.max_relative_change < tolerance;
  return out;
}

}  // namespace optocav::lindblad
