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

#include "optocav/sweep/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "optocav/error.hpp"
#include "optocav/lindblad/observables.hpp"
#include "parallel.hpp"

namespace optocav::sweep {

namespace {

std::vector<Engine> engines_of(Engine e) {
  if (e == Engine::both) return {Engine::analytic, Engine::numeric};
  return {e};
}

// Largest population sitting on any Fock cutoff.
double cutoff_population(const Eigen::MatrixXcd& rho, const ModeLayout& layout) {
  double top[3] = {0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < layout.dim(); ++i) {
    const auto occ = layout.occupation(i);
    const double p = rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
    if (occ[0] == layout.n_cav1 - 1) top[0] += p;
    if (occ[1] == layout.n_cav2 - 1) top[1] += p;
    if (occ[2] == layout.n_mech - 1) top[2] += p;
  }
  return std::max({top[0], top[1], top[2]});
}

std::vector<std::vector<double>> grid_points(const std::vector<GridAxis>& axes) {
  std::vector<std::vector<double>> points{{}};
  for (const auto& axis : axes) {
    std::vector<std::vector<double>> next;
    const auto values = axis.values();
    for (const auto& p : points) {
      for (double v : values) {
        auto q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    }
    points = std::move(next);
  }
  return points;
}

double relative(double a, double b) {
  const double scale = std::abs(b);
  if (scale == 0.0) return a == b ? 0.0 : std::abs(a - b);
  return std::abs(a - b) / scale;
}

}  // namespace

std::size_t SweepResult::failed_rows() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.error.has_value(); }));
}

SweepRow evaluate_point(const SystemParams& params, Engine engine, const SweepConfig& config) {
  SweepRow row;
  row.engine = engine;
  try {
    if (engine == Engine::analytic) {
      const auto r = qle::analytic_point(params, config.solver.j_order, config.solver.m_max);
      row.S1 = r.S1;
      row.S2 = r.S2;
      row.g2_1 = r.g2_1;
      row.g2_2 = r.g2_2;
      row.tail = r.tail_estimate;
      for (const auto& res : r.resonances) row.flags.push_back("sideband:" + res);
    } else if (engine == Engine::numeric) {
      const auto r = lindblad::solve_numeric(params, config.layout, config.solver.method,
                                             config.solver.numeric);
      row.S1 = r.coherence.S1;
      row.S2 = r.coherence.S2;
      row.g2_1 = r.coherence.g2_1;
      row.g2_2 = r.coherence.g2_2;
      row.residual = r.state.residual;
      row.tail = cutoff_population(r.state.rho, config.layout);
      row.iterations = r.state.iterations;
      if (r.state.positivity_warning) row.flags.push_back("positivity_warning");
    } else {
      throw ConfigError("evaluate_point needs a single engine");
    }
    if (!row.g2_1) row.flags.push_back("g2_1_undefined");
  } catch (const std::exception& e) {
    row.error = e.what();
    row.flags.push_back("failed");
  }
  return row;
}

SweepResult run_sweep(const SweepConfig& config, const std::string& command) {
  config.validate();
  SweepResult out;
  out.command = command;
  for (const auto& a : config.axes) out.axis_names.push_back(a.parameter);
  if (config.minimize_over) out.axis_names.push_back("argmin_" + config.minimize_over->parameter);

  const auto points = grid_points(config.axes);
  const auto engines = engines_of(config.engine);
  const std::vector<double> inner =
      config.minimize_over ? config.minimize_over->values() : std::vector<double>{0.0};
  const std::size_t n_inner = inner.size();
  const std::size_t n_eng = engines.size();

  // Flattened (point, engine, inner) tasks keep every core busy even for
  // short outer grids with long minimization grids.
  std::vector<SweepRow> evaluated(points.size() * n_eng * n_inner);
  detail::parallel_for(evaluated.size(), config.solver.threads, [&](std::size_t t) {
    const std::size_t k = t % n_inner;
    const std::size_t e = (t / n_inner) % n_eng;
    const std::size_t p = t / (n_inner * n_eng);
    SystemParams params = config.base;
    for (std::size_t a = 0; a < config.axes.size(); ++a) {
      set_parameter(params, config.axes[a].parameter, points[p][a]);
    }
    if (config.minimize_over) set_parameter(params, config.minimize_over->parameter, inner[k]);
    evaluated[t] = evaluate_point(params, engines[e], config);
  });

  for (std::size_t p = 0; p < points.size(); ++p) {
    for (std::size_t e = 0; e < n_eng; ++e) {
      const std::size_t base = (p * n_eng + e) * n_inner;
      if (!config.minimize_over) {
        SweepRow row = std::move(evaluated[base]);
        row.axis_values = points[p];
        out.rows.push_back(std::move(row));
        continue;
      }
      std::optional<std::size_t> best;
      std::size_t failures = 0;
      for (std::size_t k = 0; k < n_inner; ++k) {
        const SweepRow& r = evaluated[base + k];
        if (r.error) {
          ++failures;
          continue;
        }
        if (!r.g2_1) continue;
        if (!best || *r.g2_1 < *evaluated[base + *best].g2_1) best = k;
      }
      SweepRow row;
      if (best) {
        row = evaluated[base + *best];
        row.axis_values = points[p];
        row.axis_values.push_back(inner[*best]);
        if (failures > 0) row.flags.push_back("partial_minimization");
        if (n_inner > 2 && (*best == 0 || *best == n_inner - 1)) row.flags.push_back("argmin_at_edge");
      } else {
        row.engine = engines[e];
        row.axis_values = points[p];
        row.axis_values.push_back(std::nan(""));
        if (failures == n_inner) {
          row.error = evaluated[base].error;
          row.flags.push_back("failed");
        } else {
          row.flags.push_back("g2_1_undefined");
        }
      }
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

SweepResult run_point(const SweepConfig& config) {
  SweepConfig c = config;
  c.axes.clear();
  c.minimize_over.reset();
  return run_sweep(c, "point");
}

SweepResult scan_delta1(const SweepConfig& config) {
  const bool has = std::any_of(config.axes.begin(), config.axes.end(),
                               [](const GridAxis& a) { return a.parameter == "delta1"; });
  if (!has) {
    SweepConfig c = config;
    c.axes.insert(c.axes.begin(), GridAxis{"delta1", 0.0, 1.0, 81});
    return run_sweep(c, "scan-delta1");
  }
  return run_sweep(config, "scan-delta1");
}

SweepResult grid_min_g2(SweepConfig config) {
  if (config.axes.empty()) {
    config.axes = {GridAxis{"delta2", 0.0, 1.0, 41}, GridAxis{"E2", 0.0, 5.0 * config.base.E1, 41}};
  }
  if (!config.minimize_over) config.minimize_over = GridAxis{"delta1", 0.0, 0.6, 61};
  return run_sweep(config, "grid-min-g2");
}

SweepResult scan_g(SweepConfig config) {
  if (config.axes.empty()) config.axes = {GridAxis{"g", 0.0, 1.0, 41}};
  if (!config.minimize_over) config.minimize_over = GridAxis{"delta1", 0.0, 1.2, 121};
  return run_sweep(config, "scan-g");
}

CompareReport compare_engines(SweepConfig config) {
  config.engine = Engine::both;
  CompareReport report;
  report.sweep = run_sweep(config, "compare");
  const char* names[] = {"S1", "S2", "g2_1", "g2_2"};
  const double tols[] = {config.compare.S, config.compare.S, config.compare.g2, config.compare.g2};
  report.summary.resize(4);
  for (int q = 0; q < 4; ++q) {
    report.summary[static_cast<std::size_t>(q)].quantity = names[q];
    report.summary[static_cast<std::size_t>(q)].tolerance = tols[q];
  }
  for (std::size_t i = 0; i + 1 < report.sweep.rows.size(); i += 2) {
    const SweepRow& a = report.sweep.rows[i];
    const SweepRow& n = report.sweep.rows[i + 1];
    const std::optional<double>* av[] = {&a.S1, &a.S2, &a.g2_1, &a.g2_2};
    const std::optional<double>* nv[] = {&n.S1, &n.S2, &n.g2_1, &n.g2_2};
    std::vector<double> diff(4, std::nan(""));
    for (int q = 0; q < 4; ++q) {
      if (!*av[q] || !*nv[q]) continue;
      diff[static_cast<std::size_t>(q)] = relative(**av[q], **nv[q]);
      auto& s = report.summary[static_cast<std::size_t>(q)];
      s.max_relative = std::max(s.max_relative, diff[static_cast<std::size_t>(q)]);
      s.mean_relative += diff[static_cast<std::size_t>(q)];
      ++s.points;
    }
    report.diffs.push_back(std::move(diff));
  }
  for (auto& s : report.summary) {
    if (s.points > 0) s.mean_relative /= static_cast<double>(s.points);
    s.pass = s.max_relative <= s.tolerance;
    report.pass = report.pass && s.pass;
  }
  if (report.sweep.failed_rows() > 0) report.pass = false;
  return report;
}

}  // namespace optocav::sweep
