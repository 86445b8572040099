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

#include <vector>

#include "optocav/params.hpp"

namespace optocav::qle {

struct ExpTerm {
  cplx coeff;
  cplx rate;
};

/// f(t) = sum_k coeff_k exp(rate_k t). Terms whose rates agree to within
/// kRateTolerance are merged on construction; order of first appearance is kept.
class ExpSeries {
 public:
  static constexpr double kRateTolerance = 1e-12;

  ExpSeries() = default;
  explicit ExpSeries(std::vector<ExpTerm> terms);

  static ExpSeries constant(cplx c) { return ExpSeries({{c, 0.0}}); }

  const std::vector<ExpTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  cplx operator()(double t) const;
  cplx coefficient_sum() const;
  /// Coefficient of the term with the given rate (0 when absent).
  cplx coefficient(cplx rate) const;
  /// sum_k |coeff_k|^2.
  double squared_norm() const;

  /// Limit t -> infinity. Throws std::domain_error when a term grows or
  /// oscillates without decaying; decaying terms drop out.
  cplx limit() const;

  /// Complex conjugate function: coefficients and rates conjugated.
  ExpSeries conj() const;

  friend ExpSeries operator+(const ExpSeries& a, const ExpSeries& b);
  friend ExpSeries operator*(cplx s, const ExpSeries& a);
  /// Pointwise product; rates add.
  friend ExpSeries operator*(const ExpSeries& a, const ExpSeries& b);

 private:
  std::vector<ExpTerm> terms_;
};

/// int_{-inf}^t exp(-pole (t - s)) f(s) ds, term by term:
/// (coeff, rate) -> (coeff / (pole + rate), rate).
/// Throws ResonanceError when |pole + rate| < 1e-12 or Re(pole + rate) <= 0.
ExpSeries integrate_ordered(const ExpSeries& f, cplx pole);

}  // namespace optocav::qle
