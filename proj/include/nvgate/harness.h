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

// Scenario configuration and the experiments behind the command-line tool.

#ifndef NVGATE_HARNESS_H_
#define NVGATE_HARNESS_H_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "nvgate/gate_algebra.h"
#include "nvgate/pulse_engine.h"
#include "nvgate/register_model.h"

namespace nvgate {

// Bloch angles of one spin-1/2: cos(theta/2)|up> + e^{i phi} sin(theta/2)|down>.
struct BlochState {
  double theta = kPi;
  double phi = 0.0;
};

struct ScenarioConfig {
  RegisterConfig reg;
  CouplingConvention coupling_convention = CouplingConvention::kVerbatim;
  RecipeSpec recipe;

  // Synthesis.
  std::vector<int> harmonics;  // per nucleus
  TunerOptions tuner;
  int max_blocks = 64;
  SectionOrder section_order = SectionOrder::kPalindrome;
  bool track_frames = true;

  // Electron label in {x+, x-, y+, y-, z+, z-, 1, 0}; nuclei in their frames.
  std::string initial_electron = "y+";
  std::vector<BlochState> initial_nuclei;

  ErrorModel error;

  double ghz_phase = kPi / 4;
  std::vector<double> figure1_phi_over_pi;
  std::vector<double> sweep_theta_deg;
  int runs = 100;

  std::vector<int> correlator_targets;
  std::vector<Axis> correlator_axes;
  std::vector<BlochState> correlator_nuclei;

  double ghz_fidelity_min = 0.983;
  double ghz_fidelity_max = 0.993;
  double figure1_max_deviation = 0.05;
  double correlator_tolerance = 0.05;
  int verify_instances = 200;

  std::uint64_t seed = 20260101;

  void validate() const;
};

// Three-nucleus register, three-gate x recipe and default grids.
ScenarioConfig default_scenario();

// Unknown keys are SpecErrors.
ScenarioConfig parse_scenario(const std::string& json_text);
ScenarioConfig load_scenario(const std::string& path);

// Fully resolved scenario in canonical JSON (sorted keys, no seed).
std::string canonical_json(const ScenarioConfig& cfg);

// FNV-1a 64 of canonical_json as 16 hex digits.
std::string config_hash(const ScenarioConfig& cfg);

// "start:stop:points" or a comma-separated list.
std::vector<double> parse_grid(const std::string& text);

// Electron (x) nuclei in the nuclear frames.
StateVector initial_frame_state(const std::string& electron,
                                const std::vector<BlochState>& nuclei);

// |y+> (|down...down> + i |up...up>) / sqrt 2 built from
// exp(i phase sigma_y prod sigma_x).
StateVector ghz_target(int nuclei, double phase);

// One plan per recipe gate, tuned with errors off.
std::vector<GatePlan> synthesize_plans(const ScenarioConfig& cfg,
                                       const std::vector<GateSpec>& gates);

// Runs a recipe at pulse level from a frame state and returns the final
// state in the comparison frame.
StateVector run_recipe(const ScenarioConfig& cfg, const RecipeSpec& recipe,
                       const std::vector<GatePlan>& plans,
                       const ErrorModel& error, const StateVector& frame_state,
                       SequencePlan* schedule_out = nullptr);

struct Figure1Row {
  double phi_over_pi;
  double ideal_z1;
  double ideal_z123;
  double simulated_z1;
  double simulated_z123;
};

std::vector<Figure1Row> run_figure1(const ScenarioConfig& cfg,
                                    const std::vector<GatePlan>& plans,
                                    int jobs);

struct GhzResult {
  double fidelity = 0.0;
  double ideal_limit_fidelity = 0.0;
  double gate_level_fidelity = 0.0;
  int pulses = 0;
  double duration = 0.0;
  double norm_error = 0.0;
};

GhzResult run_ghz(const ScenarioConfig& cfg,
                  const std::vector<GatePlan>& plans);

struct SweepRow {
  double theta_deg;
  double ideal;  // gate-level fidelity, independent of theta
  double mean;
  double std_error;
  int runs;
};

std::vector<SweepRow> run_phase_sweep(const ScenarioConfig& cfg,
                                      const std::vector<GatePlan>& plans,
                                      int jobs);

// Mean at each grid point must not exceed the previous one by more than
// two combined standard errors.
bool sweep_non_increasing(const std::vector<SweepRow>& rows);

struct CorrelatorResult {
  double truth;
  double ideal;
  double pulse_level;
};

CorrelatorResult run_correlator(const ScenarioConfig& cfg);

// Nuclear spin rotation R with R^dagger sigma_x R = sigma_z, used to read a
// z factor of the correlator through an x-axis gate.
Operator z_to_x_rotation();

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_passed() const;
};

IdentityReport run_verify(const ScenarioConfig& cfg);

// Row-major table written as CSV; every row gets config_hash, seed and
// code_version columns appended.
class CsvTable {
 public:
  CsvTable(std::vector<std::string> columns, std::string config_hash,
           std::uint64_t seed);
  void add_row(std::vector<std::string> cells);
  std::string str() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
  std::string hash_;
  std::uint64_t seed_;
};

std::string format_number(double v);
const char* code_version();

CsvTable figure1_table(const std::vector<Figure1Row>& rows,
                       const ScenarioConfig& cfg);
CsvTable ghz_table(const GhzResult& r, const ScenarioConfig& cfg);
CsvTable sweep_table(const std::vector<SweepRow>& rows,
                     const ScenarioConfig& cfg);
CsvTable correlator_table(const CorrelatorResult& r, const ScenarioConfig& cfg);
CsvTable synthesis_table(const std::vector<GatePlan>& plans,
                         const ScenarioConfig& cfg);
CsvTable verify_table(const IdentityReport& r, const ScenarioConfig& cfg);

// Runs f(i) for i in [0, n) on up to jobs threads. Results must be written
// to per-index slots by f.
template <typename F>
void parallel_for(int n, int jobs, F f) {
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> workers;
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace nvgate

#endif  // NVGATE_HARNESS_H_
