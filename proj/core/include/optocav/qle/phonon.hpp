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
#include <array>
#include <span>

#include "optocav/qle/exp_series.hpp"

namespace optocav::qle {

/// Vacuum correlations of the freely evolving resonator, with
/// P(t) = i lambda [b^+ exp(i w t) - b exp(-i w t)] and lambda = g / w_m.
struct PhononCorrelationSpec {
  double lambda = 0.5;
  int m_max = 12;  ///< highest phonon index kept in series expansions
  double omega_m = 1.0;

  /// lambda^{2(m_max+1)} / (m_max+1)!, an upper bound on the weight dropped by
  /// expand_to_series.
  double tail_bound() const;
  void validate() const;
};

/// <exp(i P(tau)) exp(-i P(0))> = exp[lambda^2 (exp(-i w tau) - 1)].
cplx phonon_corr_2pt(const PhononCorrelationSpec& spec, double tau);

/// <prod_i exp(i s_i P(t_i))>, operators ordered left to right, for integer
/// charges s_i:
///   exp{lambda^2 [-(1/2) sum_i s_i^2 - sum_{i<j} s_i s_j exp(-i w (t_i - t_j))]}.
cplx phonon_correlation(const PhononCorrelationSpec& spec, std::span<const double> times,
                        std::span<const int> charges);

/// Four-point case of phonon_correlation with charges +-1.
cplx phonon_corr_4pt(const PhononCorrelationSpec& spec, const std::array<double, 4>& times,
                     const std::array<int, 4>& signs);

/// exp(-lambda^2) sum_{m=0}^{m_max} lambda^{2m}/m! exp(-i m w tau).
ExpSeries expand_to_series(const PhononCorrelationSpec& spec);

/// d(m, k) = <m| exp[lambda (b^+ - b)] |k> for 0 <= m, k <= m_max.
Eigen::MatrixXd displacement_matrix(const PhononCorrelationSpec& spec);

/// Phonon-resolved amplitudes are series whose term with rate i k w carries
/// the amplitude of phonon number k. Inserting one more photon displaces the
/// resonator: the result has coefficient sum_k d(m, k) c_k at rate i m w.
ExpSeries insert_displacement(const ExpSeries& f, const Eigen::MatrixXd& d, double omega_m);

}  // namespace optocav::qle
