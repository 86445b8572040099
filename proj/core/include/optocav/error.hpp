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

#include <stdexcept>
#include <string>

namespace optocav {

/// Invalid physical parameters, layouts or sweep configurations.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Hilbert or Liouville space would exceed the configured size limit.
class DimensionError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A numerical solver failed (singular system, no convergence, unphysical state).
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double last_residual = -1.0)
      : std::runtime_error(what), last_residual_(last_residual) {}

  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

/// Steady state has eigenvalues below the hard positivity floor; the Fock
/// truncation is too small for the parameters.
class TruncationError : public SolverError {
 public:
  using SolverError::SolverError;
};

/// A term of the perturbative calculus hit a vanishing denominator.
class ResonanceError : public std::domain_error {
 public:
  ResonanceError(const std::string& what, std::string term)
      : std::domain_error(what), term_(std::move(term)) {}

  const std::string& term() const noexcept { return term_; }

 private:
  std::string term_;
};

}  // namespace optocav
