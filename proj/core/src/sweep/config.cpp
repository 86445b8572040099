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

#include "optocav/sweep/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>

#include "optocav/error.hpp"

namespace optocav::sweep {

using nlohmann::json;

namespace {

double* field(SystemParams& p, const std::string& name) {
  if (name == "delta1") return &p.delta1;
  if (name == "delta2") return &p.delta2;
  if (name == "g") return &p.g;
  if (name == "J") return &p.J;
  if (name == "E1") return &p.E1;
  if (name == "E2") return &p.E2;
  if (name == "kappa1") return &p.kappa1;
  if (name == "kappa2") return &p.kappa2;
  if (name == "gamma") return &p.gamma;
  if (name == "nbar") return &p.nbar;
  if (name == "omega_m") return &p.omega_m;
  return nullptr;
}

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

template <class T>
T get(const json& j, const char* key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

template <class T>
void get_optional(const json& j, const char* key, const std::string& where, T& out) {
  if (j.contains(key)) out = get<T>(j, key, where);
}

GridAxis parse_axis(const json& j, const std::string& where) {
  check_keys(j, where, {"parameter", "start", "stop", "count"});
  GridAxis a{get<std::string>(j, "parameter", where), get<double>(j, "start", where),
             get<double>(j, "stop", where), get<int>(j, "count", where)};
  a.validate();
  return a;
}

json axis_json(const GridAxis& a) {
  return {{"parameter", a.parameter}, {"start", a.start}, {"stop", a.stop}, {"count", a.count}};
}

lindblad::LinearBackend backend_from_string(const std::string& s) {
  if (s == "automatic") return lindblad::LinearBackend::automatic;
  if (s == "sparse_lu") return lindblad::LinearBackend::sparse_lu;
  if (s == "krylov") return lindblad::LinearBackend::krylov;
  throw ConfigError("unknown backend '" + s + "'");
}

std::string to_string(lindblad::LinearBackend b) {
  switch (b) {
    case lindblad::LinearBackend::sparse_lu: return "sparse_lu";
    case lindblad::LinearBackend::krylov: return "krylov";
    default: return "automatic";
  }
}

}  // namespace

std::string to_string(Engine e) {
  switch (e) {
    case Engine::numeric: return "numeric";
    case Engine::analytic: return "analytic";
    default: return "both";
  }
}

Engine engine_from_string(const std::string& s) {
  if (s == "numeric") return Engine::numeric;
  if (s == "analytic") return Engine::analytic;
  if (s == "both") return Engine::both;
  throw ConfigError("engine must be numeric, analytic or both, got '" + s + "'");
}

void set_parameter(SystemParams& p, const std::string& name, double value) {
  double* f = field(p, name);
  if (f == nullptr || name == "omega_m") throw ConfigError("parameter '" + name + "' cannot be swept");
  *f = value;
}

double get_parameter(const SystemParams& p, const std::string& name) {
  SystemParams copy = p;
  const double* f = field(copy, name);
  if (f == nullptr) throw ConfigError("unknown parameter '" + name + "'");
  return *f;
}

std::vector<double> GridAxis::values() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] =
        count == 1 ? start : start + (stop - start) * static_cast<double>(i) / (count - 1);
  }
  return out;
}

void GridAxis::validate() const {
  SystemParams probe;
  set_parameter(probe, parameter, 0.0);
  if (count < 1) throw ConfigError("grid for '" + parameter + "' is empty");
  if (!std::isfinite(start) || !std::isfinite(stop)) {
    throw ConfigError("grid for '" + parameter + "' has non-finite bounds");
  }
  if (count > 1 && !(stop > start)) {
    throw ConfigError("grid for '" + parameter + "' must be increasing");
  }
}

void SweepConfig::validate() const {
  base.validate();
  layout.validate();
  std::set<std::string> seen;
  for (const auto& a : axes) {
    a.validate();
    if (!seen.insert(a.parameter).second) {
      throw ConfigError("axis '" + a.parameter + "' declared twice");
    }
  }
  if (minimize_over) {
    minimize_over->validate();
    if (seen.count(minimize_over->parameter)) {
      throw ConfigError("minimize_over parameter '" + minimize_over->parameter +
                        "' is also a scan axis");
    }
  }
  if (solver.j_order < qle::kAllOrders) throw ConfigError("j_order must be >= -1");
  if (solver.m_max < 0) throw ConfigError("m_max must be >= 0");
  if (solver.threads < 0) throw ConfigError("threads must be >= 0");
  if (output.empty()) throw ConfigError("output prefix is empty");
}

SweepConfig parse_config(const json& j) {
  check_keys(j, "config",
             {"base", "layout", "engine", "axes", "minimize_over", "output", "solver", "compare"});
  SweepConfig c;
  if (j.contains("base")) {
    const json& b = j["base"];
    check_keys(b, "base",
               {"delta1", "delta2", "g", "J", "E1", "E2", "kappa1", "kappa2", "gamma", "nbar",
                "omega_m"});
    for (const auto& [key, value] : b.items()) *field(c.base, key) = get<double>(b, key.c_str(), "base");
  }
  if (j.contains("layout")) {
    const json& l = j["layout"];
    check_keys(l, "layout", {"n_cav1", "n_cav2", "n_mech", "max_dim"});
    get_optional(l, "n_cav1", "layout", c.layout.n_cav1);
    get_optional(l, "n_cav2", "layout", c.layout.n_cav2);
    get_optional(l, "n_mech", "layout", c.layout.n_mech);
    get_optional(l, "max_dim", "layout", c.layout.max_dim);
  }
  if (j.contains("engine")) c.engine = engine_from_string(get<std::string>(j, "engine", "config"));
  if (j.contains("axes")) {
    if (!j["axes"].is_array()) throw ConfigError("axes must be an array");
    for (std::size_t i = 0; i < j["axes"].size(); ++i) {
      c.axes.push_back(parse_axis(j["axes"][i], "axes[" + std::to_string(i) + "]"));
    }
  }
  if (j.contains("minimize_over") && !j["minimize_over"].is_null()) {
    c.minimize_over = parse_axis(j["minimize_over"], "minimize_over");
  }
  get_optional(j, "output", "config", c.output);
  if (j.contains("solver")) {
    const json& s = j["solver"];
    check_keys(s, "solver",
               {"j_order", "m_max", "method", "backend", "shift", "tolerance", "max_iter",
                "threads"});
    get_optional(s, "j_order", "solver", c.solver.j_order);
    get_optional(s, "m_max", "solver", c.solver.m_max);
    get_optional(s, "threads", "solver", c.solver.threads);
    get_optional(s, "shift", "solver", c.solver.numeric.shift);
    get_optional(s, "tolerance", "solver", c.solver.numeric.krylov_tolerance);
    get_optional(s, "max_iter", "solver", c.solver.numeric.power_max_iter);
    if (s.contains("method")) {
      const auto m = get<std::string>(s, "method", "solver");
      if (m == "direct") {
        c.solver.method = lindblad::SolveMethod::direct;
      } else if (m == "inverse_power") {
        c.solver.method = lindblad::SolveMethod::inverse_power;
      } else {
        throw ConfigError("solver.method must be direct or inverse_power");
      }
    }
    if (s.contains("backend")) {
      c.solver.numeric.backend = backend_from_string(get<std::string>(s, "backend", "solver"));
    }
  }
  if (j.contains("compare")) {
    const json& t = j["compare"];
    check_keys(t, "compare", {"S", "g2"});
    get_optional(t, "S", "compare", c.compare.S);
    get_optional(t, "g2", "compare", c.compare.g2);
  }
  c.validate();
  return c;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

json to_json(const SweepConfig& c) {
  const SystemParams& p = c.base;
  json j;
  j["base"] = {{"delta1", p.delta1}, {"delta2", p.delta2}, {"g", p.g},
               {"J", p.J},           {"E1", p.E1},         {"E2", p.E2},
               {"kappa1", p.kappa1}, {"kappa2", p.kappa2}, {"gamma", p.gamma},
               {"nbar", p.nbar},     {"omega_m", p.omega_m}};
  j["layout"] = {{"n_cav1", c.layout.n_cav1},
                 {"n_cav2", c.layout.n_cav2},
                 {"n_mech", c.layout.n_mech},
                 {"max_dim", c.layout.max_dim}};
  j["engine"] = to_string(c.engine);
  j["axes"] = json::array();
  for (const auto& a : c.axes) j["axes"].push_back(axis_json(a));
  j["minimize_over"] = c.minimize_over ? axis_json(*c.minimize_over) : json(nullptr);
  j["output"] = c.output;
  j["solver"] = {
      {"j_order", c.solver.j_order},
      {"m_max", c.solver.m_max},
      {"method", c.solver.method == lindblad::SolveMethod::direct ? "direct" : "inverse_power"},
      {"backend", to_string(c.solver.numeric.backend)},
      {"shift", c.solver.numeric.shift},
      {"tolerance", c.solver.numeric.krylov_tolerance},
      {"max_iter", c.solver.numeric.power_max_iter},
      {"threads", c.solver.threads}};
  j["compare"] = {{"S", c.compare.S}, {"g2", c.compare.g2}};
  return j;
}

}  // namespace optocav::sweep
