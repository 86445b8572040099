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
#include <string>
#include <vector>

#include "optocav/qle/phonon.hpp"

namespace optocav::qle {

/// Retain every power of J (exact in J within the weak-pumping expansion).
inline constexpr int kAllOrders = -1;

/// Steady-state photon statistics from the perturbative Langevin solution.
///
/// The engine works in the polaron frame at T = 0 with free mechanical
/// evolution (gamma is ignored) and to leading order in the pumps. Amplitudes
/// are phonon-resolved ExpSeries: the term with rate i m w_m is the amplitude
/// of phonon number m. One-photon amplitudes f_j and two-photon amplitudes
/// (a1^2, a1 a2, a2^2) obey
///   (P_j + i m) f_j   = E_j d(m,0) + i J f_other
///   (Q_11 + i m) A_11 = 2 E_1 (d f_1)_m + 2 i J A_12
///   (Q_12 + i m) A_12 = (d (E_1 f_2 + E_2 f_1))_m + i J (A_11 + A_22)
/// with P_j = kappa_j/2 + i D~_j, Q_jj = kappa_j + i (2 D~_j - 2 D_g),
/// Q_12 = (kappa_1 + kappa_2)/2 + i (D~_1 + D~_2 - 2 D_g) and d the displacement
/// matrix. Then <n_j> = sum_m |f_j,m|^2 and <a_j^+2 a_j^2> = sum_m |A_jj,m|^2.
///
/// With j_order = N >= 0 the J couplings are expanded by recursion on the
/// power of J, each step one integrate_ordered call; kAllOrders solves the
/// coupled systems rate by rate.
struct AnalyticResult {
  std::optional<double> S1;
  std::optional<double> S2;
  std::optional<double> g2_1;
  std::optional<double> g2_2;
  std::array<double, 2> mean_photons{};
  std::array<double, 2> pair_moments{};  ///< <a_j^+2 a_j^2>
  int j_order = kAllOrders;
  int m_max = 0;
  /// Phonon weight beyond m_max, bounded for the two-photon displacement 2 lambda.
  double tail_estimate = 0.0;
  /// Two-photon sideband poles with |Im(Q + i m w)| below half their width,
  /// e.g. "a1a1:m=2". These are the phonon-assisted 1 -> 2 photon resonances.
  std::vector<std::string> resonances;
};

/// Throws ConfigError for nbar != 0 or invalid parameters, ResonanceError
/// from integrate_ordered.
AnalyticResult analytic_point(const SystemParams& params, int j_order = kAllOrders,
                              int m_max = 12);

/// (S1, S2); an entry is absent when that cavity is not pumped.
std::array<std::optional<double>, 2> analytic_spectrum(const SystemParams& params,
                                                       int j_order = kAllOrders, int m_max = 12);

/// (g2_1, g2_2); an entry is absent when that cavity stays empty.
std::array<std::optional<double>, 2> analytic_g2(const SystemParams& params,
                                                 int j_order = kAllOrders, int m_max = 12);

}  // namespace optocav::qle
