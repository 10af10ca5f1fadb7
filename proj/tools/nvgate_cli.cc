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

// nvgate: batch experiments on the NV register.
//
//   nvgate verify      [--config PATH] [--seed U64] [--out CSV]
//   nvgate figure1     [--config PATH] [--grid G] [--jobs N] [--out CSV]
//   nvgate ghz         [--config PATH] [--out CSV]
//   nvgate phase-sweep [--config PATH] [--grid G] [--jobs N] [--out CSV]
//   nvgate correlator  [--config PATH] [--out CSV]
//   nvgate synthesize  [--config PATH] [--out CSV]
//
// Exit status: 0 ok, 1 invalid input, 2 acceptance threshold missed or
// synthesis failure.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "nvgate/errors.h"
#include "nvgate/harness.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitThreshold = 2;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string grid;
  int jobs = 1;
};

nvgate::ScenarioConfig load(const Options& o) {
  nvgate::ScenarioConfig cfg =
      o.config.empty() ? nvgate::default_scenario() : nvgate::load_scenario(o.config);
  if (o.seed) cfg.seed = *o.seed;
  cfg.validate();
  return cfg;
}

void emit(const nvgate::CsvTable& t, const Options& o) {
  if (o.out.empty()) {
    std::cout << t.str();
  } else {
    t.write(o.out);
  }
}

int cmd_verify(const Options& o) {
  const auto cfg = load(o);
  const auto report = nvgate::run_verify(cfg);
  emit(nvgate::verify_table(report, cfg), o);
  for (const auto& c : report.checks) {
    fmt::print(stderr, "{:<28} {:>4} max dev {:.3e} (tol {:.1e}) {}\n", c.name,
               c.instances, c.max_deviation, c.tolerance, c.passed ? "ok" : "FAIL");
  }
  return report.all_passed() ? kExitOk : kExitThreshold;
}

int cmd_figure1(const Options& o) {
  auto cfg = load(o);
  if (!o.grid.empty()) cfg.figure1_phi_over_pi = nvgate::parse_grid(o.grid);
  const auto plans = nvgate::synthesize_plans(cfg, cfg.recipe.gates);
  const auto rows = nvgate::run_figure1(cfg, plans, o.jobs);
  emit(nvgate::figure1_table(rows, cfg), o);
  double worst = 0.0;
  for (const auto& r : rows) {
    worst = std::max({worst, std::abs(r.simulated_z1 - r.ideal_z1),
                      std::abs(r.simulated_z123 - r.ideal_z123)});
  }
  fmt::print(stderr, "max deviation {:.4f} (bound {:.4f})\n", worst,
             cfg.figure1_max_deviation);
  return worst <= cfg.figure1_max_deviation ? kExitOk : kExitThreshold;
}

int cmd_ghz(const Options& o) {
  const auto cfg = load(o);
  const auto plans = nvgate::synthesize_plans(cfg, cfg.recipe.gates);
  const auto r = nvgate::run_ghz(cfg, plans);
  emit(nvgate::ghz_table(r, cfg), o);
  fmt::print(stderr, "GHZ fidelity {:.5f} (band [{}, {}]), {} pulses, {:.3f} us\n",
             r.fidelity, cfg.ghz_fidelity_min, cfg.ghz_fidelity_max, r.pulses,
             r.duration * 1e6);
  const bool ok = r.fidelity >= cfg.ghz_fidelity_min && r.fidelity <= cfg.ghz_fidelity_max;
  return ok ? kExitOk : kExitThreshold;
}

int cmd_phase_sweep(const Options& o) {
  auto cfg = load(o);
  if (!o.grid.empty()) cfg.sweep_theta_deg = nvgate::parse_grid(o.grid);
  cfg.validate();
  const auto plans = nvgate::synthesize_plans(cfg, cfg.recipe.gates);
  const auto rows = nvgate::run_phase_sweep(cfg, plans, o.jobs);
  emit(nvgate::sweep_table(rows, cfg), o);
  const bool ok = nvgate::sweep_non_increasing(rows);
  fmt::print(stderr, "fidelity {:.5f} at {} deg, {:.5f} at {} deg; {}\n",
             rows.front().mean, rows.front().theta_deg, rows.back().mean,
             rows.back().theta_deg, ok ? "non-increasing" : "NOT non-increasing");
  return ok ? kExitOk : kExitThreshold;
}

int cmd_correlator(const Options& o) {
  const auto cfg = load(o);
  const auto r = nvgate::run_correlator(cfg);
  emit(nvgate::correlator_table(r, cfg), o);
  fmt::print(stderr, "truth {:.6f} ideal {:.6f} pulse level {:.6f}\n", r.truth,
             r.ideal, r.pulse_level);
  const bool ok = std::abs(r.ideal - r.truth) <= 1e-10 &&
                  std::abs(r.pulse_level - r.truth) <= cfg.correlator_tolerance;
  return ok ? kExitOk : kExitThreshold;
}

int cmd_synthesize(const Options& o) {
  const auto cfg = load(o);
  const auto plans = nvgate::synthesize_plans(cfg, cfg.recipe.gates);
  emit(nvgate::synthesis_table(plans, cfg), o);
  if (!o.out.empty()) {
    namespace fs = std::filesystem;
    const fs::path out(o.out);
    const fs::path stem = out.parent_path() / out.stem();
    const std::string hash = nvgate::config_hash(cfg);
    auto write = [](const fs::path& p, const std::string& text) {
      std::ofstream f(p, std::ios::binary);
      if (!f) throw nvgate::SpecError("cannot write '" + p.string() + "'");
      f << text;
    };
    for (const auto& p : plans) {
      write(stem.string() + "_gate" + std::to_string(p.target + 1) + ".sched",
            nvgate::serialize_schedule(nvgate::gate_schedule(p, cfg.reg), hash));
    }
    nvgate::RecipeSpec recipe = cfg.recipe;
    recipe.central_phase = cfg.ghz_phase;
    write(stem.string() + "_recipe.sched",
          nvgate::serialize_schedule(
              nvgate::recipe_schedule(recipe, plans, cfg.reg, cfg.section_order,
                                      cfg.track_frames),
              hash));
  }
  for (const auto& p : plans) {
    fmt::print(stderr, "nucleus {}: k={} blocks={} pulses={} duration {:.3f} us phase {:.6f}\n",
               p.target + 1, p.harmonic, p.blocks, p.pulse_count(),
               p.duration() * 1e6, p.achieved_phase);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Electron-mediated multi-qubit gates on an NV nuclear register"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "scenario JSON")->check(CLI::ExistingFile);
    sub->add_option("--seed", opt.seed, "master seed");
    sub->add_option("--out", opt.out, "output CSV (stdout if omitted)");
    sub->add_option("--jobs", opt.jobs, "worker threads, 0 for all cores");
  };
  struct Command {
    const char* name;
    const char* help;
    bool grid;
    int (*run)(const Options&);
  };
  const Command commands[] = {
      {"verify", "randomized gate identity suite", false, cmd_verify},
      {"figure1", "<sigma_z> observables against the central phase", true, cmd_figure1},
      {"ghz", "GHZ preparation fidelity at pulse level", false, cmd_ghz},
      {"phase-sweep", "GHZ fidelity under random pulse phase errors", true,
       cmd_phase_sweep},
      {"correlator", "nuclear correlator readout", false, cmd_correlator},
      {"synthesize", "tune gate schedules and write them out", false, cmd_synthesize},
  };
  int (*selected)(const Options&) = nullptr;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub);
    if (c.grid) sub->add_option("--grid", opt.grid, "grid override: start:stop:points or a,b,c");
    sub->callback([&selected, &c] { selected = c.run; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    return selected(opt);
  } catch (const nvgate::SynthesisError& e) {
    fmt::print(stderr, "synthesis failed: {} (best phase {:.6f})\n", e.what(),
               e.best_phase());
    return kExitThreshold;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitInvalid;
  }
}
