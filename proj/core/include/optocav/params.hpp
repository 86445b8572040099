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
#include <complex>
#include <cstddef>

namespace optocav {

using cplx = std::complex<double>;

/// Physical parameters of the two-cavity optomechanical system. Every rate,
/// detuning and amplitude is expressed in units of the mechanical frequency.
struct SystemParams {
  double delta1 = 0.0;   ///< cavity-1 detuning from the pump
  double delta2 = 0.0;   ///< cavity-2 detuning from the pump
  double g = 0.0;        ///< single-photon optomechanical coupling
  double J = 0.0;        ///< photon tunneling amplitude between the cavities
  double E1 = 0.0;       ///< pump amplitude on cavity 1 (real, >= 0)
  double E2 = 0.0;       ///< pump amplitude on cavity 2 (real, >= 0)
  double kappa1 = 0.3;   ///< cavity-1 energy decay rate
  double kappa2 = 0.3;   ///< cavity-2 energy decay rate
  double gamma = 0.005;  ///< mechanical energy decay rate
  double nbar = 0.0;     ///< thermal phonon occupation of the mechanical bath
  double omega_m = 1.0;  ///< mechanical frequency, the unit of every other field

  /// Kerr shift g^2/omega_m.
  double kerr_shift() const noexcept { return g * g / omega_m; }
  /// Dimensionless polaron displacement g/omega_m.
  double lambda() const noexcept { return g / omega_m; }
  /// Cavity detuning minus the Kerr shift (cavity index 1 or 2).
  double shifted_detuning(int cavity) const { return detuning(cavity) - kerr_shift(); }

  double detuning(int cavity) const;
  double pump(int cavity) const;
  double kappa(int cavity) const;

  /// Exchange the parameter sets of the two cavities.
  SystemParams swapped() const noexcept;

  /// Throws ConfigError when an invariant is violated.
  void validate() const;

  bool operator==(const SystemParams&) const = default;
};

/// Fock-space truncation. Tensor ordering is cavity 1 (x) cavity 2 (x) mechanics,
/// with the mechanical index running fastest.
struct ModeLayout {
  int n_cav1 = 4;
  int n_cav2 = 4;
  int n_mech = 16;
  std::size_t max_dim = 4096;  ///< upper bound on the Hilbert-space dimension

  std::size_t dim() const noexcept {
    return static_cast<std::size_t>(n_cav1) * static_cast<std::size_t>(n_cav2) *
           static_cast<std::size_t>(n_mech);
  }
  /// Flat index of |n1, n2, m>.
  std::size_t index(int n1, int n2, int m) const noexcept {
    return (static_cast<std::size_t>(n1) * n_cav2 + static_cast<std::size_t>(n2)) * n_mech +
           static_cast<std::size_t>(m);
  }
  /// Inverse of index(): {n1, n2, m}.
  std::array<int, 3> occupation(std::size_t i) const noexcept {
    const auto m = static_cast<int>(i % n_mech);
    const auto p = i / n_mech;
    return {static_cast<int>(p / n_cav2), static_cast<int>(p % n_cav2), m};
  }

  /// Throws ConfigError for cutoffs below 2 and DimensionError past max_dim.
  void validate() const;

  bool operator==(const ModeLayout&) const = default;
};

}  // namespace optocav
