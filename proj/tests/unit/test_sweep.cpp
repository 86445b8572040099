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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "optocav/error.hpp"
#include "optocav/sweep/output.hpp"
#include "optocav/sweep/sweep.hpp"

using namespace optocav;
using namespace optocav::sweep;
using nlohmann::json;

namespace {

SweepConfig small_config() {
  SweepConfig c;
  c.base.g = 0.5;
  c.base.J = 0.05;
  c.base.E1 = c.base.E2 = 0.001;
  c.base.delta2 = 0.4;
  c.layout = ModeLayout{3, 3, 10};
  c.solver.threads = 2;
  return c;
}

std::string strip_timestamp(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.rfind("# timestamp:", 0) != 0) out += line + "\n";
  }
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Config, ParsesFullDocument) {
  const json j = json::parse(R"({
    "base": {"g": 0.4, "E1": 0.002, "kappa2": 0.2},
    "layout": {"n_cav1": 3, "n_mech": 12},
    "engine": "both",
    "axes": [{"parameter": "delta1", "start": 0, "stop": 1, "count": 5}],
    "minimize_over": {"parameter": "delta2", "start": 0, "stop": 0.5, "count": 3},
    "output": "out/x",
    "solver": {"j_order": 2, "m_max": 10, "method": "inverse_power", "backend": "krylov",
               "shift": 1e-7, "tolerance": 1e-12, "max_iter": 50, "threads": 1},
    "compare": {"S": 0.03, "g2": 0.06}
  })");
  const auto c = parse_config(j);
  EXPECT_EQ(c.base.g, 0.4);
  EXPECT_EQ(c.base.kappa2, 0.2);
  EXPECT_EQ(c.base.kappa1, 0.3);
  EXPECT_EQ(c.layout.n_cav1, 3);
  EXPECT_EQ(c.layout.n_cav2, 4);
  EXPECT_EQ(c.engine, Engine::both);
  ASSERT_EQ(c.axes.size(), 1u);
  EXPECT_EQ(c.axes[0].values().back(), 1.0);
  EXPECT_EQ(c.minimize_over->parameter, "delta2");
  EXPECT_EQ(c.solver.j_order, 2);
  EXPECT_TRUE(c.solver.method == lindblad::SolveMethod::inverse_power);
  EXPECT_TRUE(c.solver.numeric.backend == lindblad::LinearBackend::krylov);
  EXPECT_EQ(c.solver.numeric.power_max_iter, 50);
  EXPECT_EQ(c.compare.g2, 0.06);
  // Round trip through the canonical form.
  const auto back = parse_config(to_json(c));
  EXPECT_EQ(to_json(back), to_json(c));
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  const char* bad[] = {
      R"({"bogus": 1})",
      R"({"base": {"Delta1": 0.1}})",
      R"({"solver": {"tolerence": 1e-9}})",
      R"({"layout": {"n_cav1": 1}})",
      R"({"engine": "fast"})",
      R"({"axes": [{"parameter": "omega_m", "start": 0, "stop": 1, "count": 3}]})",
      R"({"axes": [{"parameter": "delta1", "start": 1, "stop": 0, "count": 3}]})",
      R"({"axes": [{"parameter": "delta1", "start": 0, "stop": 1, "count": 0}]})",
      R"({"axes": [{"parameter": "g", "start": 0, "stop": 1, "count": 2},
                   {"parameter": "g", "start": 0, "stop": 1, "count": 2}]})",
      R"({"axes": [{"parameter": "g", "start": 0, "stop": 1, "count": 2}],
          "minimize_over": {"parameter": "g", "start": 0, "stop": 1, "count": 2}})",
      R"({"base": {"kappa1": -0.3}})",
      R"({"base": {"g": "half"}})",
      R"({"solver": {"m_max": -2}})",
      R"({"solver": {"method": "guess"}})",
      R"({"output": ""})",
  };
  for (const char* text : bad) EXPECT_THROW(parse_config(json::parse(text)), ConfigError) << text;
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

TEST(Config, ShippedConfigsLoad) {
  int n = 0;
  for (const auto& e : std::filesystem::directory_iterator(OPTOCAV_CONFIG_DIR)) {
    EXPECT_NO_THROW(load_config(e.path().string())) << e.path();
    ++n;
  }
  EXPECT_GE(n, 10);
}

TEST(Config, ParameterAccess) {
  SystemParams p;
  for (const char* name : kSweepableParameters) {
    set_parameter(p, name, 0.125);
    EXPECT_EQ(get_parameter(p, name), 0.125);
  }
  EXPECT_THROW(set_parameter(p, "omega_m", 2.0), ConfigError);
  EXPECT_THROW(set_parameter(p, "chi", 2.0), ConfigError);
  EXPECT_EQ(engine_from_string(to_string(Engine::numeric)), Engine::numeric);
}

TEST(Sweep, GridIsCompleteAndRowMajor) {
  SweepConfig c = small_config();
  c.axes = {GridAxis{"delta1", 0.0, 0.5, 3}, GridAxis{"E2", 0.0, 0.002, 4}};
  const auto r = run_sweep(c);
  ASSERT_EQ(r.rows.size(), 12u);
  EXPECT_EQ(r.axis_names, (std::vector<std::string>{"delta1", "E2"}));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < 4; ++k) {
      const auto& row = r.rows[i * 4 + k];
      EXPECT_DOUBLE_EQ(row.axis_values[0], 0.25 * double(i));
      EXPECT_DOUBLE_EQ(row.axis_values[1], 0.002 * double(k) / 3.0);
      EXPECT_EQ(row.S2.has_value(), k > 0);
      EXPECT_FALSE(row.error);
    }
  }
}

TEST(Sweep, MinimizationMatchesFullScan) {
  SweepConfig c = small_config();
  c.axes = {GridAxis{"delta2", 0.2, 0.6, 3}};
  const GridAxis inner{"delta1", 0.0, 0.6, 25};
  c.minimize_over = inner;
  const auto minimized = run_sweep(c);

  SweepConfig full = small_config();
  full.axes = {GridAxis{"delta2", 0.2, 0.6, 3}, inner};
  const auto scan = run_sweep(full);
  ASSERT_EQ(minimized.rows.size(), 3u);
  EXPECT_EQ(minimized.axis_names.back(), "argmin_delta1");
  for (std::size_t p = 0; p < 3; ++p) {
    auto begin = scan.rows.begin() + std::ptrdiff_t(p * 25);
    auto best = std::min_element(begin, begin + 25, [](const SweepRow& a, const SweepRow& b) {
      return *a.g2_1 < *b.g2_1;
    });
    EXPECT_EQ(*minimized.rows[p].g2_1, *best->g2_1);
    EXPECT_EQ(minimized.rows[p].axis_values[1], best->axis_values[1]);
  }
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
  SweepConfig c = small_config();
  c.engine = Engine::both;
  c.axes = {GridAxis{"delta1", 0.0, 0.6, 4}};
  c.solver.threads = 1;
  const Provenance prov{"v", "scan-delta1", config_hash(c, "scan-delta1"), "t"};
  const auto one = format_csv(run_sweep(c, "scan-delta1"), prov);
  c.solver.threads = 3;
  EXPECT_EQ(config_hash(c, "scan-delta1"), prov.config_hash);
  EXPECT_EQ(format_csv(run_sweep(c, "scan-delta1"), prov), one);
}

TEST(Sweep, FailedPointsAreReportedNotFatal) {
  SweepConfig c = small_config();
  c.axes = {GridAxis{"nbar", 0.0, 1.0, 2}};
  const auto r = run_sweep(c);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_FALSE(r.rows[0].error);
  ASSERT_TRUE(r.rows[1].error);
  EXPECT_EQ(r.rows[1].flags, std::vector<std::string>{"failed"});
  EXPECT_EQ(r.failed_rows(), 1u);
  EXPECT_EQ(exit_code(r), kExitPartial);
  SweepResult none;
  none.rows.resize(2);
  EXPECT_EQ(exit_code(none), kExitOk);
  none.rows[0].error = none.rows[1].error = "x";
  EXPECT_EQ(exit_code(none), kExitAllFailed);
}

TEST(Sweep, NumericRowsCarryDiagnostics) {
  SweepConfig c = small_config();
  c.engine = Engine::numeric;
  c.base.delta1 = 0.25;
  const auto r = run_point(c);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_LT(*r.rows[0].residual, 1e-10);
  EXPECT_GT(*r.rows[0].tail, 0.0);
  EXPECT_LT(*r.rows[0].tail, 1e-3);
}

TEST(Sweep, CompareReportsRelativeDifferences) {
  SweepConfig c = small_config();
  c.axes = {GridAxis{"delta1", 0.2, 0.3, 2}};
  const auto rep = compare_engines(c);
  ASSERT_EQ(rep.sweep.rows.size(), 4u);
  ASSERT_EQ(rep.diffs.size(), 2u);
  const auto& a = rep.sweep.rows[0];
  const auto& n = rep.sweep.rows[1];
  EXPECT_EQ(a.engine, Engine::analytic);
  EXPECT_EQ(n.engine, Engine::numeric);
  EXPECT_DOUBLE_EQ(rep.diffs[0][2], std::abs(*a.g2_1 - *n.g2_1) / *n.g2_1);
  EXPECT_EQ(rep.summary[2].points, 2u);
  EXPECT_TRUE(rep.pass);
}

TEST(Sweep, DefaultGrids) {
  SweepConfig c = small_config();
  c.solver.threads = 0;
  c.axes = {GridAxis{"g", 0.0, 0.5, 2}};
  c.minimize_over = GridAxis{"delta1", 0.0, 0.6, 5};
  EXPECT_EQ(scan_g(c).rows.size(), 2u);
  SweepConfig d = small_config();
  const auto r = scan_delta1(d);
  EXPECT_EQ(r.rows.size(), 81u);
  EXPECT_EQ(r.command, "scan-delta1");
}

// Column contract read by the plotting scripts.
TEST(Output, CsvLayout) {
  SweepConfig c = small_config();
  c.engine = Engine::both;
  c.axes = {GridAxis{"delta2", 0.2, 0.4, 2}};
  c.minimize_over = GridAxis{"delta1", 0.0, 0.5, 3};
  const auto result = run_sweep(c, "grid-min-g2");
  const auto prov = make_provenance(c, "grid-min-g2");
  const std::string csv = format_csv(result, prov);
  const auto t = parse_csv(csv);
  ASSERT_EQ(t.header_lines.size(), 5u);
  EXPECT_EQ(t.header_lines[0], "optocav sweep");
  EXPECT_EQ(t.header_lines[1], "version: " + version());
  EXPECT_EQ(t.header_lines[2], "command: grid-min-g2");
  EXPECT_EQ(t.header_lines[3], "config_hash: " + prov.config_hash);
  EXPECT_EQ(t.header_lines[4].rfind("timestamp: ", 0), 0u);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"delta2", "argmin_delta1", "S1", "S2", "g2_1",
                                                 "g2_2", "engine", "residual", "tail", "flags"}));
  ASSERT_EQ(t.rows.size(), 4u);
  for (const auto& row : t.rows) ASSERT_EQ(row.size(), t.columns.size());
  EXPECT_EQ(t.rows[0][6], "analytic");
  EXPECT_EQ(t.rows[1][6], "numeric");
  EXPECT_EQ(t.rows[0][7], "");
  EXPECT_NE(t.rows[1][7], "");
  EXPECT_NEAR(std::stod(t.rows[0][4]), *result.rows[0].g2_1, 1e-11 * *result.rows[0].g2_1);
  EXPECT_EQ(config_hash(c, "grid-min-g2").size(), 16u);
  EXPECT_NE(config_hash(c, "grid-min-g2"), config_hash(c, "scan-g"));
}

TEST(Output, EmptyFieldsForAbsentValues) {
  SweepConfig c = small_config();
  c.base.E2 = 0.0;
  c.base.J = 0.0;
  const auto r = run_point(c);
  const auto t = parse_csv(format_csv(r, make_provenance(c, "point")));
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0][1], "");  // S2
  EXPECT_EQ(t.rows[0][3], "");  // g2_2
  EXPECT_NE(t.rows[0][0], "");
}

TEST(Output, WritesDeterministicFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "optocav_output_test";
  std::filesystem::remove_all(dir);
  SweepConfig c = small_config();
  c.engine = Engine::both;
  c.output = (dir / "nested" / "point").string();
  std::string first;
  for (int run = 0; run < 2; ++run) {
    const auto r = run_point(c);
    write_outputs(c.output, r, c, make_provenance(c, "point"));
    const std::string csv = strip_timestamp(slurp(c.output + ".csv"));
    if (run == 0) first = csv;
    EXPECT_EQ(csv, first);
  }
  const auto meta = json::parse(slurp(c.output + ".json"));
  EXPECT_EQ(meta["rows"], 2);
  EXPECT_EQ(meta["failed_rows"], 0);
  EXPECT_EQ(meta["config_hash"], config_hash(c, "point"));
  EXPECT_TRUE(meta["agreement"]["g2_1"].is_number());
  EXPECT_LT(meta["agreement"]["g2_1"].get<double>(), 0.05);
  EXPECT_EQ(parse_config(meta["config"]).base, c.base);
  std::filesystem::remove_all(dir);
}
