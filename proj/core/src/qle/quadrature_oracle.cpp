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

#include "optocav/qle/quadrature_oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "optocav/error.hpp"

namespace optocav::qle {

namespace {

constexpr cplx kI{0.0, 1.0};

// Golub-Welsch: nodes and weights of n-point Gauss-Legendre on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jac(k, k - 1) = beta;
    jac(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jac);
  x.resize(static_cast<std::size_t>(n));
  w.resize(static_cast<std::size_t>(n));
  const double half = 0.5 * (b - a);
  for (int k = 0; k < n; ++k) {
    const double v0 = eig.eigenvectors()(0, k);
    x[static_cast<std::size_t>(k)] = a + half * (eig.eigenvalues()(k) + 1.0);
    w[static_cast<std::size_t>(k)] = half * 2.0 * v0 * v0;
  }
}

struct Moments {
  double n[2];
  double pair[2];
};

Moments evaluate(const SystemParams& p, double e1, double e2, int nodes) {
  const double w = p.omega_m;
  const double period = 2.0 * std::numbers::pi / w;
  const double l2 = p.lambda() * p.lambda();
  const double dg = p.kerr_shift();
  const double d1 = p.shifted_detuning(1);
  const double d2 = p.shifted_detuning(2);
  const cplx ij = kI * p.J;

  Eigen::Matrix2cd m1;
  m1 << p.kappa1 / 2 + kI * d1, -ij, -ij, p.kappa2 / 2 + kI * d2;
  Eigen::Matrix3cd m2;
  m2 << p.kappa1 + kI * (2 * d1 - 2 * dg), -2.0 * ij, 0.0, -ij,
      (p.kappa1 + p.kappa2) / 2 + kI * (d1 + d2 - 2 * dg), -ij, 0.0, -2.0 * ij,
      p.kappa2 + kI * (2 * d2 - 2 * dg);
  Eigen::Matrix<cplx, 3, 2> s;
  s << 2 * e1, 0.0, e2, e1, 0.0, 2 * e2;
  const Eigen::Vector2cd pump(e1, e2);

  const Eigen::Matrix2cd fold1 =
      (Eigen::Matrix2cd::Identity() - Eigen::Matrix2cd(-m1 * period).exp()).inverse();
  const Eigen::Matrix3cd fold2 =
      (Eigen::Matrix3cd::Identity() - Eigen::Matrix3cd(-m2 * period).exp()).inverse();

  std::vector<double> u, wt;
  gauss_legendre(nodes, 0.0, period, u, wt);
  const auto n = static_cast<std::size_t>(nodes);

  std::vector<Eigen::Vector2cd> one(n);
  std::vector<Eigen::Matrix3cd> prop2(n);
  for (std::size_t i = 0; i < n; ++i) {
    one[i] = fold1 * Eigen::Matrix2cd(-m1 * u[i]).exp() * pump;
    prop2[i] = fold2 * Eigen::Matrix3cd(-m2 * u[i]).exp();
  }

  Moments out{};
  for (int j = 0; j < 2; ++j) {
    cplx sum = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const cplx c2 = std::exp(l2 * (std::exp(-kI * w * (u[a] - u[b])) - 1.0));
        sum += wt[a] * wt[b] * one[a](j) * std::conj(one[b](j)) * c2;
      }
    }
    out.n[j] = sum.real();
  }

  // <exp(iP(tb1)) exp(iP(tb0)) exp(-iP(tk0)) exp(-iP(tk1))> with ket delays
  // (u0, u1) and bra delays (v0, v1) reduces to
  //   exp{l2 [-2 - x - y + z (1 + x)(1 + y)]},
  // x = exp(-i w u1), y = exp(i w v1), z = exp(-i w (u0 - v0)).
  std::vector<cplx> ket[2], bra[2];
  std::vector<cplx> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = std::exp(-kI * w * u[i]);
    ys[i] = std::conj(xs[i]);
  }
  for (int j = 0; j < 2; ++j) {
    ket[j].resize(n * n);
    bra[j].resize(n * n);
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Eigen::Vector3cd amp = prop2[a] * s * one[b];
      const double weight = wt[a] * wt[b];
      for (int j = 0; j < 2; ++j) {
        const cplx v = weight * amp(2 * j);
        ket[j][a * n + b] = v * std::exp(-l2 * xs[b]);
        bra[j][a * n + b] = std::conj(v) * std::exp(-l2 * ys[b]);
      }
    }
  }
  cplx pair[2] = {0.0, 0.0};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t c = 0; c < n; ++c) {
      const cplx z = std::exp(-kI * w * (u[a] - u[c]));
      for (std::size_t b = 0; b < n; ++b) {
        const cplx zx = l2 * z * (1.0 + xs[b]);
        cplx inner[2] = {0.0, 0.0};
        for (std::size_t d = 0; d < n; ++d) {
          const cplx f = std::exp(zx * (1.0 + ys[d]));
          inner[0] += bra[0][c * n + d] * f;
          inner[1] += bra[1][c * n + d] * f;
        }
        pair[0] += ket[0][a * n + b] * inner[0];
        pair[1] += ket[1][a * n + b] * inner[1];
      }
    }
  }
  for (int j = 0; j < 2; ++j) out.pair[j] = (std::exp(-2.0 * l2) * pair[j]).real();
  return out;
}

}  // namespace

QuadratureResult quadrature_oracle_g2(const SystemParams& params,
                                      const QuadratureOptions& options) {
  params.validate();
  QuadratureResult out;
  const double e_ref = std::max(params.E1, params.E2);
  if (e_ref == 0.0) return out;
  const double e1 = params.E1 / e_ref;
  const double e2 = params.E2 / e_ref;

  const int schedule[] = {16, 24, 32, 48, 64, 96, 128};
  std::optional<Moments> previous;
  for (int nodes : schedule) {
    if (nodes > options.max_nodes) break;
    const Moments m = evaluate(params, e1, e2, nodes);
    if (previous) {
      double change = 0.0;
      for (int j = 0; j < 2; ++j) {
        auto rel = [](double a, double b) {
          const double scale = std::max(std::abs(a), std::abs(b));
          return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
        };
        change = std::max({change, rel(m.n[j], previous->n[j]),
                           rel(m.pair[j], previous->pair[j])});
      }
      out.nodes = nodes;
      out.last_change = change;
      if (change < options.tolerance) {
        for (int j = 0; j < 2; ++j) {
          out.mean_photons[j] = m.n[j] * e_ref * e_ref;
          if (m.n[j] > 1e-14) {
            (j == 0 ? out.g2_1 : out.g2_2) = m.pair[j] / (m.n[j] * m.n[j]);
          }
        }
        return out;
      }
    }
    previous = m;
  }
  throw SolverError("quadrature did not converge within the node budget", out.last_change);
}

}  // namespace optocav::qle
