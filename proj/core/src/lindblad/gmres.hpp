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
#include <cmath>
#include <vector>

#include "optocav/params.hpp"

namespace optocav::lindblad::detail {

struct GmresResult {
  Eigen::VectorXcd x;
  double relative_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Restarted, right-preconditioned GMRES(m). `apply(v)` returns A v and
/// `precondition(v)` returns M^{-1} v; the reported residual is the true one.
template <class Apply, class Precondition>
GmresResult gmres(const Apply& apply, const Precondition& precondition,
                  const Eigen::VectorXcd& rhs, const Eigen::VectorXcd& guess, double tol,
                  int restart, int max_iter) {
  GmresResult out;
  out.x = guess;
  const double bnorm = rhs.norm();
  if (bnorm == 0.0) {
    out.x.setZero();
    out.converged = true;
    return out;
  }

  const Eigen::Index n = rhs.size();
  std::vector<Eigen::VectorXcd> basis;
  Eigen::MatrixXcd hess(restart + 1, restart);
  Eigen::VectorXcd cs(restart);
  Eigen::VectorXcd sn(restart);
  Eigen::VectorXcd g(restart + 1);

  Eigen::VectorXcd r = rhs - apply(out.x);
  double rnorm = r.norm();
  while (out.iterations < max_iter) {
    out.relative_residual = rnorm / bnorm;
    if (out.relative_residual <= tol) {
      out.converged = true;
      return out;
    }
    basis.clear();
    basis.push_back(r / rnorm);
    hess.setZero();
    g.setZero();
    g(0) = rnorm;

    int k = 0;
    for (; k < restart && out.iterations < max_iter; ++k, ++out.iterations) {
      Eigen::VectorXcd w = apply(precondition(basis[static_cast<std::size_t>(k)]));
      for (int i = 0; i <= k; ++i) {
        const cplx hik = basis[static_cast<std::size_t>(i)].dot(w);
        hess(i, k) = hik;
        w -= hik * basis[static_cast<std::size_t>(i)];
      }
      const double wnorm = w.norm();
      hess(k + 1, k) = wnorm;

      for (int i = 0; i < k; ++i) {
        const cplx t = std::conj(cs(i)) * hess(i, k) + std::conj(sn(i)) * hess(i + 1, k);
        hess(i + 1, k) = -sn(i) * hess(i, k) + cs(i) * hess(i + 1, k);
        hess(i, k) = t;
      }
      const cplx a = hess(k, k);
      const double bmag = std::abs(hess(k + 1, k));
      const double denom = std::sqrt(std::norm(a) + bmag * bmag);
      if (denom == 0.0) {
        cs(k) = 1.0;
        sn(k) = 0.0;
      } else {
        cs(k) = a / denom;
        sn(k) = hess(k + 1, k) / denom;
      }
      hess(k, k) = denom;
      hess(k + 1, k) = 0.0;
      g(k + 1) = -sn(k) * g(k);
      g(k) = std::conj(cs(k)) * g(k);

      const double est = std::abs(g(k + 1)) / bnorm;
      if (wnorm == 0.0 || est <= tol) {
        ++k;
        ++out.iterations;
        break;
      }
      basis.push_back(w / wnorm);
    }

    Eigen::VectorXcd y = hess.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
    Eigen::VectorXcd update = Eigen::VectorXcd::Zero(n);
    for (int i = 0; i < k; ++i) update += y(i) * basis[static_cast<std::size_t>(i)];
    out.x += precondition(update);
    r = rhs - apply(out.x);
    rnorm = r.norm();
  }
  out.relative_residual = rnorm / bnorm;
  out.converged = out.relative_residual <= tol;
  return out;
}

}  // namespace optocav::lindblad::detail
