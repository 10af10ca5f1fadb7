// Copyright 2026 The nvgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>

#include <fmt/format.h>

#include "nvgate/errors.h"
#include "nvgate/harness.h"

#ifndef NVGATE_VERSION
#define NVGATE_VERSION "unknown"
#endif

namespace nvgate {

namespace {

std::string quoted(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string axes_label(const std::vector<Axis>& axes) {
  std::string s;
  for (Axis a : axes) s += axis_char(a);
  return s;
}

std::string targets_label(const std::vector<int>& targets) {
  std::string s;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(targets[i] + 1);
  }
  return s;
}

}  // namespace

const char* code_version() { return NVGATE_VERSION; }

// fmt formats doubles independently of the C locale.
std::string format_number(double v) { return fmt::format("{:.12g}", v); }

CsvTable::CsvTable(std::vector<std::string> columns, std::string config_hash,
                   std::uint64_t seed)
    : columns_(std::move(columns)), hash_(std::move(config_hash)), seed_(seed) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) {
    throw DimensionError("row has " + std::to_string(cells.size()) +
                         " cells, table has " + std::to_string(columns_.size()) +
                         " columns");
  }
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::string out;
  for (const auto& c : columns_) out += quoted(c) + ',';
  out += "config_hash,seed,code_version\n";
  const std::string tail =
      fmt::format("{},{},{}\n", hash_, seed_, code_version());
  for (const auto& row : rows_) {
    for (const auto& c : row) out += quoted(c) + ',';
    out += tail;
  }
  return out;
}

void CsvTable::write(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw SpecError("cannot write '" + path + "'");
  f << str();
  if (!f) throw SpecError("failed writing '" + path + "'");
}

CsvTable figure1_table(const std::vector<Figure1Row>& rows,
                       const ScenarioConfig& cfg) {
  std::vector<int> targets;
  for (const auto& g : cfg.recipe.gates) targets.push_back(g.target);
  const std::string z1 = "sz_" + std::to_string(targets.front() + 1);
  std::string zall = "sz";
  for (int t : targets) zall += "_" + std::to_string(t + 1);

  CsvTable t({"phi_over_pi", "observable", "ideal", "simulated", "deviation"},
             config_hash(cfg), cfg.seed);
  for (const auto& r : rows) {
    t.add_row({format_number(r.phi_over_pi), z1, format_number(r.ideal_z1),
               format_number(r.simulated_z1),
               format_number(r.simulated_z1 - r.ideal_z1)});
    t.add_row({format_number(r.phi_over_pi), zall, format_number(r.ideal_z123),
               format_number(r.simulated_z123),
               format_number(r.simulated_z123 - r.ideal_z123)});
  }
  return t;
}

CsvTable ghz_table(const GhzResult& r, const ScenarioConfig& cfg) {
  CsvTable t({"fidelity", "ideal_limit_fidelity", "gate_level_fidelity",
              "pulses", "duration_us", "norm_error"},
             config_hash(cfg), cfg.seed);
  t.add_row({format_number(r.fidelity), format_number(r.ideal_limit_fidelity),
             format_number(r.gate_level_fidelity), std::to_string(r.pulses),
             format_number(r.duration * 1e6), format_number(r.norm_error)});
  return t;
}

CsvTable sweep_table(const std::vector<SweepRow>& rows,
                     const ScenarioConfig& cfg) {
  CsvTable t({"theta_deg", "observable", "ideal", "mean", "std_error", "runs"},
             config_hash(cfg), cfg.seed);
  for (const auto& r : rows) {
    t.add_row({format_number(r.theta_deg), "ghz_fidelity", format_number(r.ideal),
               format_number(r.mean), format_number(r.std_error),
               std::to_string(r.runs)});
  }
  return t;
}

CsvTable correlator_table(const CorrelatorResult& r, const ScenarioConfig& cfg) {
  CsvTable t({"targets", "axes", "truth", "ideal", "pulse_level"},
             config_hash(cfg), cfg.seed);
  t.add_row({targets_label(cfg.correlator_targets), axes_label(cfg.correlator_axes),
             format_number(r.truth), format_number(r.ideal),
             format_number(r.pulse_level)});
  return t;
}

CsvTable synthesis_table(const std::vector<GatePlan>& plans,
                         const ScenarioConfig& cfg) {
  CsvTable t({"target", "axis", "harmonic", "blocks", "pulses", "tau_ns",
              "block_time_us", "duration_us", "x1", "x2", "fourier",
              "target_phase_rad", "achieved_phase_rad", "axis_error_rad",
              "frame_phase_rad"},
             config_hash(cfg), cfg.seed);
  for (const auto& p : plans) {
    t.add_row({std::to_string(p.target + 1), std::string(1, axis_char(p.axis)),
               std::to_string(p.harmonic), std::to_string(p.blocks),
               std::to_string(p.pulse_count()), format_number(p.tau * 1e9),
               format_number(p.block_time() * 1e6),
               format_number(p.duration() * 1e6), format_number(p.x1),
               format_number(p.x2), format_number(p.fourier),
               format_number(p.target_phase), format_number(p.achieved_phase),
               format_number(p.axis_error), format_number(p.frame_phase)});
  }
  return t;
}

CsvTable verify_table(const IdentityReport& r, const ScenarioConfig& cfg) {
  CsvTable t({"identity", "instances", "max_deviation", "tolerance", "passed"},
             config_hash(cfg), cfg.seed);
  for (const auto& c : r.checks) {
    t.add_row({c.name, std::to_string(c.instances), format_number(c.max_deviation),
               format_number(c.tolerance), c.passed ? "true" : "false"});
  }
  return t;
}

}  // namespace nvgate
