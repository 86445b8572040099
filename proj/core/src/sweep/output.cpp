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

#include "optocav/sweep/output.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "optocav/error.hpp"

namespace optocav::sweep {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string version() { return OPTOCAV_VERSION; }

std::string config_hash(const SweepConfig& config, const std::string& command) {
  json j = to_json(config);
  j["solver"].erase("threads");
  const std::string text = command + "\n" + j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Provenance make_provenance(const SweepConfig& config, const std::string& command) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return {version(), command, config_hash(config, command), buf};
}

std::string format_csv(const SweepResult& result, const Provenance& provenance) {
  std::ostringstream out;
  out << "# optocav sweep\n";
  out << "# version: " << provenance.version << "\n";
  out << "# command: " << provenance.command << "\n";
  out << "# config_hash: " << provenance.config_hash << "\n";
  out << "# timestamp: " << provenance.timestamp << "\n";
  std::vector<std::string> cols = result.axis_names;
  for (const char* c : {"S1", "S2", "g2_1", "g2_2", "engine", "residual", "tail", "flags"}) {
    cols.emplace_back(c);
  }
  out << join(cols, ",") << "\n";
  for (const auto& r : result.rows) {
    std::vector<std::string> f;
    for (double v : r.axis_values) f.push_back(fmt(v));
    f.push_back(fmt(r.S1));
    f.push_back(fmt(r.S2));
    f.push_back(fmt(r.g2_1));
    f.push_back(fmt(r.g2_2));
    f.push_back(to_string(r.engine));
    f.push_back(fmt(r.residual));
    f.push_back(fmt(r.tail));
    f.push_back(join(r.flags, ";"));
    out << join(f, ",") << "\n";
  }
  return out.str();
}

json sidecar_json(const SweepResult& result, const SweepConfig& config,
                  const Provenance& provenance, const CompareReport* compare) {
  json j;
  j["version"] = provenance.version;
  j["command"] = provenance.command;
  j["config_hash"] = provenance.config_hash;
  j["timestamp"] = provenance.timestamp;
  j["config"] = to_json(config);
  j["columns"] = result.axis_names;
  j["rows"] = result.rows.size();
  j["failed_rows"] = result.failed_rows();
  j["errors"] = json::array();
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& r = result.rows[i];
    if (r.error) j["errors"].push_back({{"row", i}, {"engine", to_string(r.engine)}, {"message", *r.error}});
  }
  if (compare) {
    json c;
    c["pass"] = compare->pass;
    c["quantities"] = json::array();
    for (const auto& s : compare->summary) {
      c["quantities"].push_back({{"quantity", s.quantity},
                                 {"max_relative", s.max_relative},
                                 {"mean_relative", s.mean_relative},
                                 {"points", s.points},
                                 {"tolerance", s.tolerance},
                                 {"pass", s.pass}});
    }
    c["per_point"] = json::array();
    for (const auto& d : compare->diffs) {
      json row = json::array();
      for (double v : d) row.push_back(std::isnan(v) ? json(nullptr) : json(v));
      c["per_point"].push_back(row);
    }
    j["compare"] = c;
  }
  if (result.command == "point" && result.rows.size() == 2) {
    // Both engines at one point: relative agreement, numeric as reference.
    const auto& a = result.rows[0];
    const auto& n = result.rows[1];
    json agreement;
    const std::pair<const char*, std::pair<std::optional<double>, std::optional<double>>> q[] = {
        {"S1", {a.S1, n.S1}}, {"S2", {a.S2, n.S2}}, {"g2_1", {a.g2_1, n.g2_1}},
        {"g2_2", {a.g2_2, n.g2_2}}};
    for (const auto& [name, v] : q) {
      agreement[name] = v.first && v.second && *v.second != 0.0
                            ? json(std::abs(*v.first - *v.second) / std::abs(*v.second))
                            : json(nullptr);
    }
    j["agreement"] = agreement;
  }
  return j;
}

void write_outputs(const std::string& prefix, const SweepResult& result,
                   const SweepConfig& config, const Provenance& provenance,
                   const CompareReport* compare) {
  const std::filesystem::path base(prefix);
  if (base.has_parent_path()) std::filesystem::create_directories(base.parent_path());
  std::ofstream csv(prefix + ".csv", std::ios::binary);
  std::ofstream meta(prefix + ".json", std::ios::binary);
  if (!csv || !meta) throw ConfigError("cannot write outputs with prefix '" + prefix + "'");
  csv << format_csv(result, provenance);
  meta << sidecar_json(result, config, provenance, compare).dump(2) << "\n";
}

int exit_code(const SweepResult& result) {
  const std::size_t failed = result.failed_rows();
  if (failed == 0) return kExitOk;
  return failed == result.rows.size() ? kExitAllFailed : kExitPartial;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  bool have_columns = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      t.header_lines.push_back(line.size() > 2 ? line.substr(2) : std::string());
    } else if (!have_columns) {
      t.columns = split(line, ',');
      have_columns = true;
    } else {
      t.rows.push_back(split(line, ','));
    }
  }
  return t;
}

}  // namespace optocav::sweep
