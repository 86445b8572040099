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

#include <optional>
#include <string>
#include <vector>

#include "optocav/sweep/config.hpp"

namespace optocav::sweep {

/// One engine evaluated at one grid point.
struct SweepRow {
  std::vector<double> axis_values;  ///< declared axes, then the argmin when minimizing
  std::optional<double> S1;
  std::optional<double> S2;
  std::optional<double> g2_1;  ///< the minimum over minimize_over when minimizing
  std::optional<double> g2_2;
  Engine engine = Engine::analytic;
  std::optional<double> residual;  ///< numeric: ||L vec(rho)||
  std::optional<double> tail;      ///< analytic: phonon tail bound; numeric: cutoff population
  int iterations = 0;
  std::vector<std::string> flags;
  std::optional<std::string> error;  ///< set when the engine failed at this point
};

struct SweepResult {
  std::string command;
  std::vector<std::string> axis_names;
  std::vector<SweepRow> rows;  ///< grid points row-major; engines analytic then numeric

  std::size_t failed_rows() const;
};

/// Evaluates one engine at a single parameter point (no minimization).
SweepRow evaluate_point(const SystemParams& params, Engine engine, const SweepConfig& config);

/// Generic driver: every point of the declared axes, each engine, optional
/// minimization of g2_1 over minimize_over (ties go to the smaller value).
/// Points run on a worker pool; rows come back in grid order.
SweepResult run_sweep(const SweepConfig& config, const std::string& command = "sweep");

/// The base point only; one row per engine.
SweepResult run_point(const SweepConfig& config);

/// Requires a delta1 axis.
SweepResult scan_delta1(const SweepConfig& config);

/// Minimum of g2_1 over delta1 on a (delta2, E2) grid. Missing pieces of the
/// config get defaults: delta2 in [0, 1] and E2 in [0, 5 E1], 41 points each,
/// delta1 in [0, 0.6] with 61 points.
SweepResult grid_min_g2(SweepConfig config);

/// Minimum of g2_1 over delta1 along a g axis. Defaults: g in [0, 1] with 41
/// points, delta1 in [0, 1.2] with 121 points.
SweepResult scan_g(SweepConfig config);

struct CompareSummary {
  std::string quantity;
  double max_relative = 0.0;
  double mean_relative = 0.0;
  std::size_t points = 0;
  double tolerance = 0.0;
  bool pass = true;
};

struct CompareReport {
  SweepResult sweep;                       ///< engine = both rows
  std::vector<std::vector<double>> diffs;  ///< per grid point: S1, S2, g2_1, g2_2 relative
  std::vector<CompareSummary> summary;     ///< S1, S2, g2_1, g2_2
  bool pass = true;
};

/// Runs both engines on the configured grid and reports relative differences
/// |analytic - numeric| / |numeric|, tolerances from config.compare.
CompareReport compare_engines(SweepConfig config);

}  // namespace optocav::sweep
