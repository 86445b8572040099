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

#include "optocav/qle/analytic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "optocav/error.hpp"

namespace optocav::qle {

namespace {

constexpr cplx kI{0.0, 1.0};

struct Poles {
  cplx p1, p2, q11, q12, q22;
};

Poles poles(const SystemParams& p) {
  const double dg = p.kerr_shift();
  const double d1 = p.shifted_detuning(1);
  const double d2 = p.shifted_detuning(2);
  return {p.kappa1 / 2 + kI * d1, p.kappa2 / 2 + kI * d2,
          p.kappa1 + kI * (2 * d1 - 2 * dg), (p.kappa1 + p.kappa2) / 2 + kI * (d1 + d2 - 2 * dg),
          p.kappa2 + kI * (2 * d2 - 2 * dg)};
}

struct Amplitudes {
  ExpSeries f1, f2, a11, a12, a22;
};

// Pumps e1, e2 are in units of the stronger one.
Amplitudes truncated_in_j(const SystemParams& p, const Poles& q, const Eigen::MatrixXd& d,
                          double e1, double e2, int order) {
  const double w = p.omega_m;
  const cplx ij = kI * p.J;
  const ExpSeries vac = insert_displacement(ExpSeries::constant(1.0), d, w);

  ExpSeries f1 = integrate_ordered(e1 * vac, q.p1);
  ExpSeries f2 = integrate_ordered(e2 * vac, q.p2);
  ExpSeries a11 = integrate_ordered(insert_displacement(2.0 * e1 * f1, d, w), q.q11);
  ExpSeries a12 = integrate_ordered(insert_displacement(e1 * f2 + e2 * f1, d, w), q.q12);
  ExpSeries a22 = integrate_ordered(insert_displacement(2.0 * e2 * f2, d, w), q.q22);
  Amplitudes sum{f1, f2, a11, a12, a22};

  for (int n = 1; n <= order; ++n) {
    ExpSeries g1 = integrate_ordered(ij * f2, q.p1);
    ExpSeries g2 = integrate_ordered(ij * f1, q.p2);
    ExpSeries b11 = integrate_ordered(
        insert_displacement(2.0 * e1 * g1, d, w) + (2.0 * ij) * a12, q.q11);
    ExpSeries b12 = integrate_ordered(
        insert_displacement(e1 * g2 + e2 * g1, d, w) + ij * (a11 + a22), q.q12);
    ExpSeries b22 = integrate_ordered(
        insert_displacement(2.0 * e2 * g2, d, w) + (2.0 * ij) * a12, q.q22);
    f1 = std::move(g1);
    f2 = std::move(g2);
    a11 = std::move(b11);
    a12 = std::move(b12);
    a22 = std::move(b22);
    sum.f1 = sum.f1 + f1;
    sum.f2 = sum.f2 + f2;
    sum.a11 = sum.a11 + a11;
    sum.a12 = sum.a12 + a12;
    sum.a22 = sum.a22 + a22;
  }
  return sum;
}

Amplitudes all_orders_in_j(const SystemParams& p, const Poles& q, const Eigen::MatrixXd& d,
                           double e1, double e2) {
  const double w = p.omega_m;
  const cplx ij = kI * p.J;
  const Eigen::Index n = d.rows();
  std::vector<ExpTerm> f1, f2;
  for (Eigen::Index m = 0; m < n; ++m) {
    const cplx r = kI * (w * static_cast<double>(m));
    // Closed-form 2x2 and 3x3 solves, written so that exchanging the cavities
    // exchanges the results bit for bit.
    const cplx a1 = q.p1 + r;
    const cplx a2 = q.p2 + r;
    const cplx det = a1 * a2 - ij * ij;
    const cplx y1 = e1 * d(m, 0);
    const cplx y2 = e2 * d(m, 0);
    const Eigen::Vector2cd x((a2 * y1 + ij * y2) / det, (a1 * y2 + ij * y1) / det);
    f1.push_back({x(0), r});
    f2.push_back({x(1), r});
  }
  Amplitudes out;
  out.f1 = ExpSeries(std::move(f1));
  out.f2 = ExpSeries(std::move(f2));
  const ExpSeries s11 = insert_displacement(2.0 * e1 * out.f1, d, w);
  const ExpSeries s12 = insert_displacement(e1 * out.f2 + e2 * out.f1, d, w);
  const ExpSeries s22 = insert_displacement(2.0 * e2 * out.f2, d, w);
  std::vector<ExpTerm> a11, a12, a22;
  for (Eigen::Index m = 0; m < n; ++m) {
    const cplx r = kI * (w * static_cast<double>(m));
    // [[A, -2u, 0], [-u, B, -u], [0, -2u, C]] x = y with u = iJ: eliminate the
    // outer rows into the middle one.
    const cplx a = q.q11 + r;
    const cplx b = q.q12 + r;
    const cplx c = q.q22 + r;
    const cplx y1 = s11.coefficient(r);
    const cplx y2 = s12.coefficient(r);
    const cplx y3 = s22.coefficient(r);
    const cplx two_u2 = 2.0 * ij * ij;
    const cplx mid = (y2 + (ij * y1 / a + ij * y3 / c)) / (b - (two_u2 / a + two_u2 / c));
    const Eigen::Vector3cd x((y1 + 2.0 * ij * mid) / a, mid, (y3 + 2.0 * ij * mid) / c);
    a11.push_back({x(0), r});
    a12.push_back({x(1), r});
    a22.push_back({x(2), r});
  }
  out.a11 = ExpSeries(std::move(a11));
  out.a12 = ExpSeries(std::move(a12));
  out.a22 = ExpSeries(std::move(a22));
  return out;
}

void flag_resonances(const Poles& q, int m_max, double w, std::vector<std::string>& out) {
  const std::pair<const char*, cplx> channels[] = {{"a1a1", q.q11}, {"a1a2", q.q12},
                                                   {"a2a2", q.q22}};
  for (const auto& [name, pole] : channels) {
    for (int m = 1; m <= m_max; ++m) {
      if (std::abs(pole.imag() + w * m) < 0.5 * pole.real()) {
        out.push_back(std::string(name) + ":m=" + std::to_string(m));
      }
    }
  }
}

}  // namespace

AnalyticResult analytic_point(const SystemParams& params, int j_order, int m_max) {
  params.validate();
  if (params.nbar != 0.0) {
    throw ConfigError("the analytic engine assumes a zero-temperature resonator (nbar = 0)");
  }
  if (j_order < kAllOrders) throw ConfigError("j_order must be >= 0 or kAllOrders");
  const PhononCorrelationSpec spec{params.lambda(), m_max, params.omega_m};
  spec.validate();

  AnalyticResult out;
  out.j_order = j_order;
  out.m_max = m_max;
  out.tail_estimate = std::max(spec.tail_bound(),
                               PhononCorrelationSpec{2.0 * spec.lambda, m_max, 1.0}.tail_bound());
  const Poles q = poles(params);
  flag_resonances(q, m_max, params.omega_m, out.resonances);

  const double e_ref = std::max(params.E1, params.E2);
  if (e_ref == 0.0) return out;
  const double e1 = params.E1 / e_ref;
  const double e2 = params.E2 / e_ref;

  const Eigen::MatrixXd d = displacement_matrix(spec);
  const Amplitudes amp = j_order == kAllOrders ? all_orders_in_j(params, q, d, e1, e2)
                                               : truncated_in_j(params, q, d, e1, e2, j_order);

  // Everything below is in units where the stronger pump is 1, so the
  // normalized statistics depend on E1/E2 only.
  const double n[2] = {amp.f1.squared_norm(), amp.f2.squared_norm()};
  const double pair[2] = {amp.a11.squared_norm(), amp.a22.squared_norm()};
  const double e[2] = {e1, e2};
  const double kappa[2] = {params.kappa1, params.kappa2};
  std::optional<double>* spectra[2] = {&out.S1, &out.S2};
  std::optional<double>* g2s[2] = {&out.g2_1, &out.g2_2};
  for (int j = 0; j < 2; ++j) {
    out.mean_photons[j] = n[j] * e_ref * e_ref;
    out.pair_moments[j] = pair[j] * e_ref * e_ref * e_ref * e_ref;
    if (e[j] > 0.0) *spectra[j] = kappa[j] * kappa[j] * n[j] / (4.0 * e[j] * e[j]);
    if (n[j] > 1e-14) *g2s[j] = pair[j] / (n[j] * n[j]);
  }
  return out;
}

std::array<std::optional<double>, 2> analytic_spectrum(const SystemParams& params, int j_order,
                                                       int m_max) {
  const auto r = analytic_point(params, j_order, m_max);
  return {r.S1, r.S2};
}

std::array<std::optional<double>, 2> analytic_g2(const SystemParams& params, int j_order,
                                                 int m_max) {
  const auto r = analytic_point(params, j_order, m_max);
  return {r.g2_1, r.g2_2};
}

}  // namespace optocav::qle
