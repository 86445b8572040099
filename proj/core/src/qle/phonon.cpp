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

#include "optocav/qle/phonon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "optocav/error.hpp"
#include "optocav/fock/operators.hpp"

namespace optocav::qle {

namespace {

constexpr cplx kI{0.0, 1.0};

}  // namespace

double PhononCorrelationSpec::tail_bound() const {
  const double n = m_max + 1.0;
  return std::exp(2.0 * n * std::log(std::max(lambda, 1e-300)) - std::lgamma(n + 1.0));
}

void PhononCorrelationSpec::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be >= 0");
  if (m_max < 0) throw ConfigError("m_max must be >= 0");
  if (!(omega_m > 0.0)) throw ConfigError("omega_m must be > 0");
}

cplx phonon_corr_2pt(const PhononCorrelationSpec& spec, double tau) {
  const double l2 = spec.lambda * spec.lambda;
  return std::exp(l2 * (std::exp(-kI * spec.omega_m * tau) - 1.0));
}

cplx phonon_correlation(const PhononCorrelationSpec& spec, std::span<const double> times,
                        std::span<const int> charges) {
  if (times.size() != charges.size()) {
    throw std::invalid_argument("times and charges differ in length");
  }
  cplx exponent = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double si = charges[i];
    exponent -= 0.5 * si * si;
    for (std::size_t j = i + 1; j < times.size(); ++j) {
      exponent -= si * charges[j] * std::exp(-kI * spec.omega_m * (times[i] - times[j]));
    }
  }
  return std::exp(spec.lambda * spec.lambda * exponent);
}

cplx phonon_corr_4pt(const PhononCorrelationSpec& spec, const std::array<double, 4>& times,
                     const std::array<int, 4>& signs) {
  for (int s : signs) {
    if (s != 1 && s != -1) throw std::invalid_argument("four-point signs must be +1 or -1");
  }
  return phonon_correlation(spec, times, signs);
}

ExpSeries expand_to_series(const PhononCorrelationSpec& spec) {
  spec.validate();
  const double l2 = spec.lambda * spec.lambda;
  std::vector<ExpTerm> terms;
  double weight = std::exp(-l2);
  for (int m = 0; m <= spec.m_max; ++m) {
    if (m > 0) weight *= l2 / m;
    terms.push_back({weight, -kI * (spec.omega_m * m)});
  }
  return ExpSeries(std::move(terms));
}

Eigen::MatrixXd displacement_matrix(const PhononCorrelationSpec& spec) {
  spec.validate();
  const int n = spec.m_max + 1;
  Eigen::MatrixXd d(n, n);
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) d(m, k) = fock::displacement_element(spec.lambda, m, k);
  }
  return d;
}

ExpSeries insert_displacement(const ExpSeries& f, const Eigen::MatrixXd& d, double omega_m) {
  Eigen::VectorXcd in = Eigen::VectorXcd::Zero(d.cols());
  for (const auto& t : f.terms()) {
    const double k_real = t.rate.imag() / omega_m;
    const long k = std::lround(k_real);
    if (std::abs(t.rate.real()) > ExpSeries::kRateTolerance ||
        std::abs(k_real - static_cast<double>(k)) > 1e-9 || k < 0 || k >= d.cols()) {
      throw std::invalid_argument("series term is not a phonon-resolved amplitude");
    }
    in(k) += t.coeff;
  }
  const Eigen::VectorXcd out = d.cast<cplx>() * in;
  std::vector<ExpTerm> terms;
  terms.reserve(static_cast<std::size_t>(out.size()));
  for (Eigen::Index m = 0; m < out.size(); ++m) {
    terms.push_back({out(m), kI * (omega_m * static_cast<double>(m))});
  }
  return ExpSeries(std::move(terms));
}

}  // namespace optocav::qle
