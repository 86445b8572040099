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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion.
//
//   optocav_acceptance [--only id,...] [--expect-fail id,...]
//
// Exit status is 0 when every criterion matches its expectation: PASS unless
// listed in --expect-fail. A listed criterion that starts passing is also a
// mismatch, so the list cannot go stale silently.

#include <CLI11.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "optocav/lindblad/observables.hpp"
#include "optocav/qle/analytic.hpp"
#include "optocav/qle/phonon.hpp"
#include "optocav/sweep/sweep.hpp"

namespace {

using namespace optocav;
using sweep::Engine;
using sweep::GridAxis;
using sweep::SweepConfig;

constexpr cplx kI{0.0, 1.0};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [miss: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

SystemParams reference_point() {
  SystemParams p;
  p.g = 0.5;
  p.kappa1 = p.kappa2 = 0.3;
  p.gamma = 0.005;
  p.E1 = 0.001;
  p.E2 = 0.001;
  p.delta2 = 0.4;
  p.J = 0.05;
  return p;
}

// Reference detuning scans. The S1 panel uses the first three, the g2 panel
// the first two and the last.
struct Curve {
  const char* name;
  double J, delta2, E2;
  bool spectrum;  // part of the S1 panel
  bool g2;        // part of the g2 panel
};
constexpr Curve kReferenceCurves[] = {
    {"uncoupled", 0.0, 0.4, 0.001, true, true},
    {"coupled", 0.05, 0.4, 0.001, true, true},
    {"coupled_e2_double", 0.05, 0.4, 0.002, true, false},
    {"coupled_delta2_low", 0.05, 0.1, 0.001, false, true},
};

SystemParams curve_params(const Curve& c) {
  SystemParams p = reference_point();
  p.J = c.J;
  p.delta2 = c.delta2;
  p.E2 = c.E2;
  return p;
}

SweepConfig config_for(const SystemParams& p, Engine e) {
  SweepConfig c;
  c.base = p;
  c.engine = e;
  return c;
}

// Minimum of g2_1 over delta1 for one engine.
sweep::SweepRow min_over_delta1(const SystemParams& p, Engine e, GridAxis axis,
                                const ModeLayout& layout = {}) {
  SweepConfig c = config_for(p, e);
  c.layout = layout;
  c.minimize_over = axis;
  auto r = sweep::run_sweep(c, "acceptance");
  return r.rows.front();
}

// ---------------------------------------------------------------------------

Outcome single_cavity_baseline() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  SystemParams p = reference_point();
  p.J = 0.0;
  p.E2 = 0.0;
  const auto row = min_over_delta1(p, Engine::numeric, GridAxis{"delta1", 0.0, 0.5, 51});
  const double t = seconds_since(t0);
  const double g2 = row.g2_1.value_or(NAN);
  const double arg = row.axis_values.back();
  o.detail << "min g2_1 = " << g2 << " at delta1 = " << arg << " (" << t << " s)";
  o.require(std::abs(g2 - 0.32) <= 0.03, "min 0.32 +- 0.03");
  o.require(std::abs(arg - 0.25) <= 0.02 + 1e-12, "argmin 0.25 +- 0.02");
  o.require(t < 300.0, "runtime < 5 min");
  return o;
}

// Analytic grid of min g2_1 over (delta2, E2), minimized over delta1.
sweep::SweepResult min_g2_grid(double kappa) {
  SweepConfig c;
  c.base = reference_point();
  c.base.kappa1 = c.base.kappa2 = kappa;
  c.engine = Engine::analytic;
  c.axes = {GridAxis{"delta2", 0.0, 1.0, 41}, GridAxis{"E2", 0.0, 0.005, 41}};
  c.minimize_over = GridAxis{"delta1", 0.0, 0.6, 61};
  return sweep::grid_min_g2(c);
}

const sweep::SweepRow& grid_minimum(const sweep::SweepResult& r) {
  return *std::min_element(r.rows.begin(), r.rows.end(), [](const auto& a, const auto& b) {
    return a.g2_1.value_or(INFINITY) < b.g2_1.value_or(INFINITY);
  });
}

Outcome narrow_grid_minimum() {
  Outcome o;
  const auto r = min_g2_grid(0.15);
  const auto& best = grid_minimum(r);
  const double g2 = *best.g2_1;
  const double d2 = best.axis_values[0];
  const double e2 = best.axis_values[1];
  o.detail << "min g2_1 = " << g2 << " at delta2 = " << d2 << ", E2 = " << e2
           << ", delta1 = " << best.axis_values[2];
  o.require(g2 >= 0.005 && g2 <= 0.014, "min in [0.005, 0.014]");
  o.require(std::abs(d2 - 0.35) <= 0.025 + 1e-12, "delta2 within one cell of 0.35");
  o.require(std::abs(e2 - 0.005) <= 0.005 / 40 + 1e-12, "E2 within one cell of 0.005");
  return o;
}

Outcome wide_grid_minimum() {
  Outcome o;
  const auto r = min_g2_grid(0.3);
  const auto& best = grid_minimum(r);
  // The numeric engine decides: re-minimize over delta1 around the analytic
  // optimum with the full master equation.
  SystemParams p = reference_point();
  p.delta2 = best.axis_values[0];
  p.E2 = best.axis_values[1];
  const double d1 = best.axis_values[2];
  const auto num = min_over_delta1(p, Engine::numeric, GridAxis{"delta1", d1 - 0.05, d1 + 0.05, 11});
  const double g2 = num.g2_1.value_or(NAN);
  o.detail << "analytic min " << *best.g2_1 << " at delta2 = " << p.delta2 << ", E2 = " << p.E2
           << "; numeric min " << g2 << " at delta1 = " << num.axis_values.back();
  o.require(std::abs(g2 - 0.063) <= 0.3 * 0.063, "numeric min 0.063 +- 30%");
  return o;
}

Outcome engine_cross_validation() {
  Outcome o;
  double worst_s = 0.0, worst_g2 = 0.0;
  std::string where_s, where_g2;
  for (const auto& c : kReferenceCurves) {
    SweepConfig cfg = config_for(curve_params(c), Engine::both);
    cfg.axes = {GridAxis{"delta1", 0.0, 1.0, 41}};
    const auto rep = sweep::compare_engines(cfg);
    o.require(rep.sweep.failed_rows() == 0, std::string(c.name) + " rows failed");
    for (std::size_t i = 0; i < rep.diffs.size(); ++i) {
      const double d1 = rep.sweep.rows[2 * i].axis_values[0];
      std::ostringstream at;
      at << c.name << " delta1=" << d1;
      if (c.spectrum && rep.diffs[i][0] > worst_s) {
        worst_s = rep.diffs[i][0];
        where_s = at.str();
      }
      if (c.g2 && rep.diffs[i][2] > worst_g2) {
        worst_g2 = rep.diffs[i][2];
        where_g2 = at.str();
      }
    }
  }
  o.detail << "max |dS1|/S1 = " << worst_s << " (" << where_s << "), max |dg2_1|/g2_1 = "
           << worst_g2 << " (" << where_g2 << ")";
  o.require(worst_s < 0.02, "S1 within 2%");
  o.require(worst_g2 < 0.05, "g2_1 within 5%");
  return o;
}

Outcome ordering_properties() {
  Outcome o;
  const GridAxis d1{"delta1", 0.0, 0.6, 61};
  auto analytic_min = [&](SystemParams p) { return *min_over_delta1(p, Engine::analytic, d1).g2_1; };

  std::vector<double> by_kappa;
  for (double k2 : {0.4, 0.3, 0.2}) {
    SystemParams p = reference_point();
    p.kappa2 = k2;
    by_kappa.push_back(analytic_min(p));
  }
  std::vector<double> by_e2;
  for (double e2 : {0.0005, 0.001, 0.002}) {
    SystemParams p = reference_point();
    p.E2 = e2;
    by_e2.push_back(analytic_min(p));
  }
  std::vector<double> by_j;
  for (double j : {0.0, 0.02, 0.05, 0.08}) {
    SystemParams p = reference_point();
    p.J = j;
    by_j.push_back(analytic_min(p));
  }
  auto decreasing = [](const std::vector<double>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::less_equal<>()) == v.end();
  };

  // Thermal bath needs the numeric engine; weaker damping as in the g scans.
  SystemParams p = reference_point();
  p.E2 = 0.005;
  p.gamma = 0.001;
  const GridAxis coarse{"delta1", 0.0, 0.6, 25};
  const double cold = min_over_delta1(p, Engine::numeric, coarse).g2_1.value_or(NAN);
  p.nbar = 1.0;
  const double hot = min_over_delta1(p, Engine::numeric, coarse).g2_1.value_or(NAN);

  auto list = [](const std::vector<double>& v) {
    std::ostringstream s;
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? " > " : "") << v[i];
    return s.str();
  };
  o.detail << "(i) kappa2 0.4,0.3,0.2: " << list(by_kappa) << "; (ii) E2 E1/2,E1,2E1: "
           << list(by_e2) << "; (iii) J 0,0.02,0.05,0.08: " << list(by_j)
           << "; (iv) nbar 0 -> 1: " << cold << " -> " << hot;
  o.require(decreasing(by_kappa), "(i)");
  o.require(decreasing(by_e2), "(ii)");
  o.require(decreasing(by_j), "(iii)");
  o.require(hot > cold && hot < 1.0, "(iv)");
  return o;
}

cplx fock_vacuum_correlation(double lambda, const std::vector<double>& t, const std::vector<int>& s) {
  const int n = 48;
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 1; k < n; ++k) b(k - 1, k) = std::sqrt(double(k));
  Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(n, n);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Eigen::MatrixXcd p =
        kI * lambda * (b.adjoint() * std::exp(kI * t[i]) - b * std::exp(-kI * t[i]));
    const Eigen::MatrixXcd arg = kI * double(s[i]) * p;
    prod = prod * arg.exp();
  }
  return prod(0, 0);
}

Outcome invariant_suites() {
  Outcome o;
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  // Steady-state tolerances on random parameter points.
  double trace = 0.0, herm = 0.0, min_eig = 0.0;
  for (int k = 0; k < 6; ++k) {
    SystemParams p = reference_point();
    p.delta1 = u(rng);
    p.delta2 = u(rng);
    p.J = 0.08 * u(rng);
    p.E2 = 0.002 * u(rng);
    p.nbar = k % 2 ? 0.5 : 0.0;
    const auto s = lindblad::solve_numeric(p, ModeLayout{3, 3, 12}).state;
    trace = std::max(trace, s.trace_error);
    herm = std::max(herm, s.hermiticity_defect);
    min_eig = std::min(min_eig, s.min_eigenvalue);
  }
  o.require(trace < 1e-10 && herm < 1e-8 && min_eig > -1e-8, "steady-state tolerances");

  // g2 = 1 without optomechanics.
  SystemParams p = reference_point();
  p.g = 0.0;
  const auto num = lindblad::solve_numeric(p, ModeLayout{4, 4, 4}).coherence;
  const auto ana = qle::analytic_point(p);
  const double num_dev = std::max(std::abs(*num.g2_1 - 1), std::abs(*num.g2_2 - 1));
  const double ana_dev = std::max(std::abs(*ana.g2_1 - 1), std::abs(*ana.g2_2 - 1));
  o.require(num_dev < 1e-6, "numeric g2 = 1 at g = 0");
  // Exact up to floating-point rounding of the amplitude algebra.
  o.require(ana_dev <= 1e-14, "analytic g2 = 1 at g = 0");

  // S1 = 1 for a resonant empty cavity.
  SystemParams e;
  e.E1 = 0.001;
  const double s1 = *lindblad::solve_numeric(e, ModeLayout{4, 4, 2}).coherence.S1;
  o.require(std::abs(s1 - 1.0) < 1e-6, "S1 = 1 at resonance");

  // Swap symmetry and pump-scale invariance of the analytic engine, bit for bit.
  SystemParams q = reference_point();
  q.delta1 = 0.27;
  q.E2 = 0.0013;
  q.kappa2 = 0.25;
  const auto a = qle::analytic_point(q);
  const auto b = qle::analytic_point(q.swapped());
  o.require(*a.S1 == *b.S2 && *a.S2 == *b.S1 && *a.g2_1 == *b.g2_2 && *a.g2_2 == *b.g2_1,
            "analytic swap symmetry");
  const auto na = lindblad::solve_numeric(q, ModeLayout{3, 3, 12}).coherence;
  const auto nb = lindblad::solve_numeric(q.swapped(), ModeLayout{3, 3, 12}).coherence;
  const double swap_dev = std::max({rel(*na.S1, *nb.S2), rel(*na.g2_1, *nb.g2_2),
                                    rel(*na.S2, *nb.S1), rel(*na.g2_2, *nb.g2_1)});
  o.require(swap_dev < 1e-9, "numeric swap covariance");
  SystemParams scaled = q;
  scaled.E1 *= 4.0;
  scaled.E2 *= 4.0;
  const auto c = qle::analytic_point(scaled);
  o.require(*a.S1 == *c.S1 && *a.g2_1 == *c.g2_1 && *a.g2_2 == *c.g2_2, "pump-scale invariance");

  // Phonon correlators against dense matrices on 48 phonon levels.
  const qle::PhononCorrelationSpec spec{0.5, 12, 1.0};
  double corr_dev = 0.0;
  for (int k = 0; k < 10; ++k) {
    const std::array<double, 4> t{5 * u(rng), 5 * u(rng), 5 * u(rng), 5 * u(rng)};
    const std::array<int, 4> s{1, 1, -1, -1};
    corr_dev = std::max(corr_dev, std::abs(qle::phonon_corr_4pt(spec, t, s) -
                                           fock_vacuum_correlation(0.5, {t.begin(), t.end()},
                                                                   {s.begin(), s.end()})));
  }
  o.require(corr_dev < 1e-8, "phonon correlators vs Fock matrices");

  // Ordered integral against adaptive quadrature.
  const qle::ExpSeries f({{cplx(1.0, 0.5), 0.0}, {cplx(-0.3, 0.2), cplx(0.05, 1.0)}});
  const cplx pole(0.15, 0.4);
  const auto g = qle::integrate_ordered(f, pole);
  boost::math::quadrature::exp_sinh<double> quad;
  double int_dev = 0.0;
  for (double t : {0.0, 0.9}) {
    auto part = [&](auto take) {
      return quad.integrate([&](double v) { return take(std::exp(-pole * v) * f(t - v)); }, 1e-13);
    };
    const cplx want(part([](cplx z) { return z.real(); }), part([](cplx z) { return z.imag(); }));
    int_dev = std::max(int_dev, std::abs(g(t) - want));
  }
  o.require(int_dev < 1e-9, "integrate_ordered vs quadrature");

  o.detail << "trace " << trace << ", hermiticity " << herm << ", min eig " << min_eig
           << "; g2-1 at g=0: numeric " << num_dev << ", analytic " << ana_dev << "; S1-1 "
           << std::abs(s1 - 1) << "; numeric swap " << swap_dev << "; correlators " << corr_dev
           << "; ordered integral " << int_dev;
  return o;
}

Outcome truncation_convergence() {
  Outcome o;
  double worst = 0.0;
  std::string where;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& c : kReferenceCurves) {
    SystemParams p = curve_params(c);
    for (int i = 0; i <= 10; ++i) {
      p.delta1 = 0.1 * i;
      const auto t = lindblad::truncation_convergence(p, ModeLayout{4, 4, 16},
                                                      ModeLayout{5, 5, 24, 4096});
      if (t.max_relative_change > worst) {
        worst = t.max_relative_change;
        where = std::string(c.name) + " delta1=" + std::to_string(p.delta1);
      }
    }
  }
  o.detail << "max relative change " << worst << " (" << where << "), " << seconds_since(t0)
           << " s";
  o.require(worst < 0.01, "change < 1%");
  return o;
}

struct Criterion {
  const char* id;
  const char* title;
  Outcome (*run)();
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optocav acceptance criteria"};
  std::vector<std::string> only, expect_fail;
  app.add_option("--only", only, "run only these criteria")->delimiter(',');
  app.add_option("--expect-fail", expect_fail, "criteria known to fail")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const Criterion criteria[] = {
      {"baseline", "single-cavity baseline (numeric, J = 0)", single_cavity_baseline},
      {"grid-kappa-0.15", "grid minimum over (delta2, E2), kappa = 0.15", narrow_grid_minimum},
      {"grid-kappa-0.3", "grid minimum over (delta2, E2), kappa = 0.3, numeric arbiter", wide_grid_minimum},
      {"cross-validation", "analytic vs numeric on the reference detuning scans", engine_cross_validation},
      {"ordering", "ordering of min g2_1 in kappa2, E2, J and nbar", ordering_properties},
      {"invariants", "invariant suites", invariant_suites},
      {"truncation", "truncation convergence (4,16) -> (5,24)", truncation_convergence},
  };
  const std::set<std::string> expected(expect_fail.begin(), expect_fail.end());

  int mismatches = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const bool known = expected.count(c.id) > 0;
    if (o.pass == known) ++mismatches;
    std::printf("%s %s: %s | %s (%.1f s)%s\n", o.pass ? "PASS" : "FAIL", c.id, c.title,
                o.detail.str().c_str(), seconds_since(t0),
                known ? (o.pass ? " [listed as known failure]" : " [known failure]") : "");
    std::fflush(stdout);
  }
  return mismatches == 0 ? 0 : 1;
}
