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

#include "optocav/qle/exp_series.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "optocav/error.hpp"

namespace optocav::qle {

namespace {

bool same_rate(cplx a, cplx b) {
  return std::abs(a - b) <= ExpSeries::kRateTolerance * (1.0 + std::abs(a));
}

}  // namespace

ExpSeries::ExpSeries(std::vector<ExpTerm> terms) {
  terms_.reserve(terms.size());
  for (const auto& t : terms) {
    bool merged = false;
    for (auto& have : terms_) {
      if (same_rate(have.rate, t.rate)) {
        have.coeff += t.coeff;
        merged = true;
        break;
      }
    }
    if (!merged) terms_.push_back(t);
  }
}

cplx ExpSeries::operator()(double t) const {
  cplx sum = 0.0;
  for (const auto& term : terms_) sum += term.coeff * std::exp(term.rate * t);
  return sum;
}

cplx ExpSeries::coefficient_sum() const {
  cplx sum = 0.0;
  for (const auto& term : terms_) sum += term.coeff;
  return sum;
}

cplx ExpSeries::coefficient(cplx rate) const {
  for (const auto& term : terms_) {
    if (same_rate(term.rate, rate)) return term.coeff;
  }
  return 0.0;
}

double ExpSeries::squared_norm() const {
  double sum = 0.0;
  for (const auto& term : terms_) sum += std::norm(term.coeff);
  return sum;
}

cplx ExpSeries::limit() const {
  cplx sum = 0.0;
  for (const auto& term : terms_) {
    if (term.coeff == cplx(0.0)) continue;
    if (std::abs(term.rate) <= kRateTolerance) {
      sum += term.coeff;
    } else if (term.rate.real() >= 0.0) {
      throw std::domain_error("series has a non-decaying oscillating or growing term");
    }
  }
  return sum;
}

ExpSeries ExpSeries::conj() const {
  std::vector<ExpTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({std::conj(t.coeff), std::conj(t.rate)});
  ExpSeries s;
  s.terms_ = std::move(out);
  return s;
}

ExpSeries operator+(const ExpSeries& a, const ExpSeries& b) {
  std::vector<ExpTerm> all = a.terms_;
  all.insert(all.end(), b.terms_.begin(), b.terms_.end());
  return ExpSeries(std::move(all));
}

ExpSeries operator*(cplx s, const ExpSeries& a) {
  ExpSeries out;
  out.terms_ = a.terms_;
  for (auto& t : out.terms_) t.coeff *= s;
  return out;
}

ExpSeries operator*(const ExpSeries& a, const ExpSeries& b) {
  std::vector<ExpTerm> all;
  all.reserve(a.size() * b.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) all.push_back({x.coeff * y.coeff, x.rate + y.rate});
  }
  return ExpSeries(std::move(all));
}

ExpSeries integrate_ordered(const ExpSeries& f, cplx pole) {
  std::vector<ExpTerm> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    const cplx denom = pole + t.rate;
    if (std::abs(denom) < 1e-12 || denom.real() <= 0.0) {
      std::ostringstream term;
      term << "pole " << pole << " + rate " << t.rate;
      throw ResonanceError("resonant or non-convergent denominator in ordered integral",
                           term.str());
    }
    out.push_back({t.coeff / denom, t.rate});
  }
  return ExpSeries(std::move(out));
}

}  // namespace optocav::qle
