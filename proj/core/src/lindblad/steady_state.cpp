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

#include "optocav/lindblad/steady_state.hpp"

#include <Eigen/UmfPackSupport>
#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "gmres.hpp"
#include "optocav/error.hpp"
#include "sector_preconditioner.hpp"

namespace optocav::lindblad {

namespace {

using Precond = detail::SectorPreconditioner;

LinearBackend resolve_backend(const Liouvillian& l, const SolverOptions& opt) {
  if (opt.backend != LinearBackend::automatic) return opt.backend;
  return l.dim() <= opt.lu_threshold ? LinearBackend::sparse_lu : LinearBackend::krylov;
}

cplx vec_trace(const Eigen::VectorXcd& x, std::size_t n) {
  cplx t = 0.0;
  for (std::size_t i = 0; i < n; ++i) t += x(static_cast<Eigen::Index>(vec_index(i, i, n)));
  return t;
}

SparseMatrixC bordered_matrix(const Liouvillian& l) {
  const std::size_t n = l.hilbert_dim();
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(static_cast<std::size_t>(l.matrix.nonZeros()) + n);
  for (Eigen::Index k = 0; k < l.matrix.outerSize(); ++k) {
    for (SparseMatrixC::InnerIterator it(l.matrix, k); it; ++it) {
      if (it.row() != 0) trips.emplace_back(it.row(), it.col(), it.value());
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    trips.emplace_back(0, static_cast<int>(vec_index(i, i, n)), cplx(1.0));
  }
  SparseMatrixC b(l.matrix.rows(), l.matrix.cols());
  b.setFromTriplets(trips.begin(), trips.end());
  b.makeCompressed();
  return b;
}

class Factorization {
 public:
  // UMFPACK keeps pointers into the factored matrix, so it is owned here.
  explicit Factorization(SparseMatrixC a) : a_(std::move(a)) {
    lu_.compute(a_);
    if (lu_.info() != Eigen::Success) {
      throw SolverError("sparse factorization failed: singular Liouvillian, degenerate steady state suspected");
    }
  }
  Eigen::VectorXcd solve(const Eigen::VectorXcd& b) const {
    Eigen::VectorXcd x = lu_.solve(b);
    if (!x.allFinite()) throw SolverError("sparse factorization produced non-finite solution");
    return x;
  }

 private:
  SparseMatrixC a_;
  Eigen::UmfPackLU<SparseMatrixC> lu_;
};

DensityState finish(const Liouvillian& l, const Eigen::VectorXcd& x, const SolverOptions& opt,
                    SolveMethod method, LinearBackend backend, int iterations) {
  const std::size_t n = l.hilbert_dim();
  DensityState out;
  out.method = method;
  out.backend = backend;
  out.iterations = iterations;
  Eigen::MatrixXcd rho = unvectorize(x, n);
  const cplx tr = rho.trace();
  if (std::abs(tr) == 0.0 || !rho.allFinite()) {
    throw SolverError("steady-state solution has zero or non-finite trace");
  }
  rho /= tr;
  out.hermiticity_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  rho = (0.5 * (rho + rho.adjoint())).eval();
  rho /= rho.trace().real();
  out.trace_error = std::abs(rho.trace() - 1.0);
  out.residual = (l.matrix * vectorize(rho)).norm();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = eig.eigenvalues().minCoeff();
  if (out.min_eigenvalue < opt.positivity_abort) {
    throw TruncationError("steady state has eigenvalue " + std::to_string(out.min_eigenvalue) +
                              "; Fock truncation too small for these parameters",
                          out.residual);
  }
  out.positivity_warning = out.min_eigenvalue < opt.positivity_warn;
  out.rho = std::move(rho);
  return out;
}

// Row weights (E/(kappa/2))^-(N + N') for the element |N..><N'..| of rho.
// Under weak pumping the steady state falls off geometrically with photon
// number, so an unweighted residual lets the multi-photon rows, which set
// g2, converge only to absolute precision. Weighting the residual makes the
// Krylov tolerance relative within every photon sector.
Eigen::VectorXd sector_weights(const Liouvillian& l) {
  const SystemParams& p = l.params;
  const double ratio =
      std::max(p.E1, p.E2) / (0.5 * std::min(p.kappa1, p.kappa2));
  const double s = ratio > 0.0 && ratio < 1.0 ? ratio : 1.0;
  const std::size_t n = l.hilbert_dim();
  std::vector<int> photons(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto o = l.layout.occupation(i);
    photons[i] = o[0] + o[1];
  }
  Eigen::VectorXd w(static_cast<Eigen::Index>(l.dim()));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) {
      w(static_cast<Eigen::Index>(vec_index(r, c, n))) = std::pow(s, -(photons[r] + photons[c]));
    }
  }
  return w;
}

Eigen::VectorXcd default_start(std::size_t n) {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n),
                                                static_cast<Eigen::Index>(n));
  rho(0, 0) = 1.0;
  return vectorize(rho);
}

}  // namespace

DensityState steady_state_direct(const Liouvillian& l, const SolverOptions& options) {
  const std::size_t n = l.hilbert_dim();
  const auto backend = resolve_backend(l, options);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(l.dim()));
  rhs(0) = 1.0;

  if (backend == LinearBackend::sparse_lu) {
    const Factorization lu(bordered_matrix(l));
    return finish(l, lu.solve(rhs), options, SolveMethod::direct, backend, 0);
  }

  const Precond pre(l.params, l.layout, Precond::Mode::bordered, 0.0);
  const Eigen::VectorXd w = sector_weights(l);
  auto apply = [&](const Eigen::VectorXcd& v) {
    Eigen::VectorXcd y = l.matrix * v;
    y(0) = vec_trace(v, n);
    return Eigen::VectorXcd(w.cwiseProduct(y));
  };
  auto precondition = [&](const Eigen::VectorXcd& v) {
    return pre.solve(Eigen::VectorXcd(v.cwiseQuotient(w.cast<cplx>())));
  };
  const auto res = detail::gmres(apply, precondition, rhs, Eigen::VectorXcd::Zero(rhs.size()),
                                 options.krylov_tolerance, options.krylov_restart,
                                 options.krylov_max_iter);
  if (!res.converged) {
    throw SolverError("GMRES did not reach the requested residual", res.relative_residual);
  }
  return finish(l, res.x, options, SolveMethod::direct, backend, res.iterations);
}

DensityState steady_state_inverse_power(const Liouvillian& l, const SolverOptions& options,
                                        const Eigen::MatrixXcd& start) {
  const std::size_t n = l.hilbert_dim();
  const auto backend = resolve_backend(l, options);
  const double shift = options.shift > 0.0 ? options.shift : 1e-6 * l.params.kappa1;

  std::unique_ptr<Factorization> lu;
  std::unique_ptr<Precond> pre;
  if (backend == LinearBackend::sparse_lu) {
    SparseMatrixC id(l.matrix.rows(), l.matrix.cols());
    id.setIdentity();
    lu = std::make_unique<Factorization>(SparseMatrixC(l.matrix - cplx(shift) * id));
  } else {
    pre = std::make_unique<Precond>(l.params, l.layout, Precond::Mode::shifted, shift);
  }
  auto apply = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return l.matrix * v - shift * v;
  };
  auto precondition = [&](const Eigen::VectorXcd& v) { return pre->solve(v); };

  Eigen::VectorXcd x = start.size() > 0 ? vectorize(start) : default_start(n);
  if (static_cast<std::size_t>(x.size()) != l.dim()) {
    throw ConfigError("inverse power start matrix has the wrong dimension");
  }
  x /= vec_trace(x, n);

  double change = 0.0;
  for (int it = 1; it <= options.power_max_iter; ++it) {
    Eigen::VectorXcd y;
    if (lu) {
      y = lu->solve(x);
    } else {
      const auto res = detail::gmres(apply, precondition, x, Eigen::VectorXcd(-x / shift),
                                     options.power_inner_tolerance, options.krylov_restart,
                                     options.krylov_max_iter);
      if (!res.converged) {
        throw SolverError("GMRES stalled inside inverse power iteration", res.relative_residual);
      }
      y = res.x;
    }
    const cplx tr = vec_trace(y, n);
    if (std::abs(tr) == 0.0) throw SolverError("inverse power iterate lost its trace");
    y /= tr;
    change = (y - x).cwiseAbs().maxCoeff();
    x = std::move(y);
    if (change < options.power_tolerance) {
      return finish(l, x, options, SolveMethod::inverse_power, backend, it);
    }
  }
  throw SolverError("inverse power iteration did not converge in " +
                        std::to_string(options.power_max_iter) + " steps",
                    (l.matrix * x).norm());
}

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const Eigen::MatrixXcd d = a - b;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (d + d.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  return 0.5 * eig.eigenvalues().cwiseAbs().sum();
}

}  // namespace optocav::lindblad
