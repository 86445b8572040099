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

// Command-line front end for parameter sweeps of the two-cavity system.
//
//   optocav-sweep <point|scan-delta1|grid-min-g2|scan-g|compare>
//                 [--config file.json] [--engine numeric|analytic|both]
//                 [--out prefix] [--j-order N] [--m-max M] [--threads T]
//
// Writes <prefix>.csv and <prefix>.json. Exit codes: 0 success, 2 config
// error, 3 every point failed, 4 some points failed.

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "optocav/error.hpp"
#include "optocav/sweep/output.hpp"
#include "optocav/sweep/sweep.hpp"

namespace {

using namespace optocav;
using namespace optocav::sweep;

struct Overrides {
  std::string config_path;
  std::optional<std::string> engine;
  std::optional<std::string> out;
  std::optional<int> j_order;
  std::optional<int> m_max;
  std::optional<int> threads;
};

void add_common_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON sweep configuration")->check(CLI::ExistingFile);
  cmd->add_option("--engine", o.engine, "numeric, analytic or both")
      ->check(CLI::IsMember({"numeric", "analytic", "both"}));
  cmd->add_option("--out", o.out, "output path prefix");
  cmd->add_option("--j-order", o.j_order, "power of J kept by the analytic engine (-1: all)");
  cmd->add_option("--m-max", o.m_max, "phonon series cutoff of the analytic engine");
  cmd->add_option("--threads", o.threads, "worker threads (0: all cores)");
}

SweepConfig resolve_config(const Overrides& o) {
  SweepConfig c = o.config_path.empty() ? SweepConfig{} : load_config(o.config_path);
  if (o.engine) c.engine = engine_from_string(*o.engine);
  if (o.out) c.output = *o.out;
  if (o.j_order) c.solver.j_order = *o.j_order;
  if (o.m_max) c.solver.m_max = *o.m_max;
  if (o.threads) c.solver.threads = *o.threads;
  c.validate();
  if (!o.config_path.empty() &&
      std::filesystem::weakly_canonical(o.config_path) ==
          std::filesystem::weakly_canonical(c.output + ".json")) {
    throw ConfigError("output prefix '" + c.output + "' would overwrite the config file");
  }
  return c;
}

void print_summary(const SweepResult& r, const std::string& prefix, double seconds) {
  std::cerr << r.command << ": " << r.rows.size() << " rows, " << r.failed_rows()
            << " failed, " << seconds << " s -> " << prefix << ".csv\n";
  for (const auto& row : r.rows) {
    if (row.error) std::cerr << "  " << to_string(row.engine) << ": " << *row.error << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state photon statistics of two coupled optomechanical cavities"};
  app.require_subcommand(1);

  Overrides o;
  const char* commands[] = {"point", "scan-delta1", "grid-min-g2", "scan-g", "compare"};
  const char* help[] = {"evaluate the base point",
                        "scan the cavity-1 detuning",
                        "minimum g2_1 over delta1 on a (delta2, E2) grid",
                        "minimum g2_1 over delta1 along g",
                        "run both engines and report their differences"};
  for (int i = 0; i < 5; ++i) add_common_flags(app.add_subcommand(commands[i], help[i]), o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const SweepConfig config = resolve_config(o);
    const auto t0 = std::chrono::steady_clock::now();
    SweepResult result;
    std::optional<CompareReport> report;
    if (command == "point") {
      result = run_point(config);
    } else if (command == "scan-delta1") {
      result = scan_delta1(config);
    } else if (command == "grid-min-g2") {
      result = grid_min_g2(config);
    } else if (command == "scan-g") {
      result = scan_g(config);
    } else {
      report = compare_engines(config);
      result = report->sweep;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_outputs(config.output, result, config, make_provenance(config, command),
                  report ? &*report : nullptr);
    print_summary(result, config.output, seconds);
    if (report) {
      for (const auto& s : report->summary) {
        std::cerr << "  " << s.quantity << ": max " << s.max_relative << ", mean "
                  << s.mean_relative << " (tol " << s.tolerance << ") "
                  << (s.pass ? "ok" : "exceeded") << "\n";
      }
    }
    return exit_code(result);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAllFailed;
  }
}
