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

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "optocav/lindblad/steady_state.hpp"
#include "optocav/params.hpp"
#include "optocav/qle/analytic.hpp"

namespace optocav::sweep {

enum class Engine { numeric, analytic, both };

std::string to_string(Engine e);
Engine engine_from_string(const std::string& s);

/// Parameters that can be scanned or minimized over.
inline constexpr const char* kSweepableParameters[] = {
    "delta1", "delta2", "g", "J", "E1", "E2", "kappa1", "kappa2", "gamma", "nbar"};

/// Sets a named field of SystemParams; throws ConfigError for unknown names.
void set_parameter(SystemParams& p, const std::string& name, double value);
double get_parameter(const SystemParams& p, const std::string& name);

/// Evenly spaced grid from start to stop inclusive.
struct GridAxis {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  std::vector<double> values() const;
  void validate() const;
  bool operator==(const GridAxis&) const = default;
};

struct SolverSettings {
  int j_order = qle::kAllOrders;
  int m_max = 12;
  lindblad::SolveMethod method = lindblad::SolveMethod::direct;
  lindblad::SolverOptions numeric;
  int threads = 0;  ///< 0: hardware concurrency
};

struct CompareTolerance {
  double S = 0.02;
  double g2 = 0.05;
};

struct SweepConfig {
  SystemParams base;
  ModeLayout layout;
  Engine engine = Engine::analytic;
  std::vector<GridAxis> axes;  ///< row-major: the last axis varies fastest
  std::optional<GridAxis> minimize_over;
  std::string output = "sweep";
  SolverSettings solver;
  CompareTolerance compare;

  /// Throws ConfigError for invalid params, layout or grids.
  void validate() const;
};

/// Strict parse: unknown keys, wrong types and invalid values raise ConfigError.
SweepConfig parse_config(const nlohmann::json& j);
SweepConfig load_config(const std::string& path);
nlohmann::json to_json(const SweepConfig& c);

}  // namespace optocav::sweep
