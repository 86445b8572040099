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

#include "optocav/params.hpp"

#include <cmath>
#include <string>

#include "optocav/error.hpp"

namespace optocav {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

int check_cavity(int cavity) {
  if (cavity != 1 && cavity != 2) throw ConfigError("cavity index must be 1 or 2");
  return cavity;
}

}  // namespace

double SystemParams::detuning(int cavity) const {
  return check_cavity(cavity) == 1 ? delta1 : delta2;
}

double SystemParams::pump(int cavity) const { return check_cavity(cavity) == 1 ? E1 : E2; }

double SystemParams::kappa(int cavity) const {
  return check_cavity(cavity) == 1 ? kappa1 : kappa2;
}

SystemParams SystemParams::swapped() const noexcept {
  SystemParams s = *this;
  std::swap(s.delta1, s.delta2);
  std::swap(s.E1, s.E2);
  std::swap(s.kappa1, s.kappa2);
  return s;
}

void SystemParams::validate() const {
  const double fields[] = {delta1, delta2, g, J, E1, E2, kappa1, kappa2, gamma, nbar, omega_m};
  for (double v : fields) require(std::isfinite(v), "parameters must be finite");
  require(kappa1 > 0.0 && kappa2 > 0.0, "cavity decay rates must be positive");
  require(gamma >= 0.0, "mechanical decay rate must be non-negative");
  require(nbar >= 0.0, "thermal occupation must be non-negative");
  require(g >= 0.0 && J >= 0.0, "g and J must be non-negative");
  require(E1 >= 0.0 && E2 >= 0.0, "pump amplitudes must be non-negative");
  require(omega_m > 0.0, "mechanical frequency must be positive");
}

void ModeLayout::validate() const {
  require(n_cav1 >= 2 && n_cav2 >= 2 && n_mech >= 2, "all Fock cutoffs must be >= 2");
  if (dim() > max_dim) {
    throw DimensionError("Hilbert dimension " + std::to_string(dim()) + " exceeds limit " +
                         std::to_string(max_dim));
  }
}

}  // namespace optocav
